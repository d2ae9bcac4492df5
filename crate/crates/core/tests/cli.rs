//! The command-line front end, driven in process.

use std::path::PathBuf;

use tribound::cli::{run, FAIL, PASS, USAGE};
use tribound::constructions::BuiltinName;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn tribound(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("tribound").chain(args.iter().copied()), &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tribound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_paper_passes() {
    let o = tribound(&["verify-paper"]);
    assert_eq!(o.code, PASS, "{}", o.stderr);
    assert!(o.stdout.contains("PASS (7/7 checks)"), "{}", o.stdout);
    let j = tribound(&["--json", "verify-paper"]);
    let v: serde_json::Value = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 7);
    assert_eq!(v["all_passed"], true);
}

#[test]
fn emitted_builtins_validate_and_are_self_isomorphic() {
    for name in BuiltinName::ALL {
        let path = scratch(&format!("{}.tri", name.as_str()));
        let p = path.to_str().unwrap();
        let o = tribound(&["builtin", name.as_str(), "--emit", p]);
        assert_eq!(o.code, PASS, "{}", o.stderr);
        let v = tribound(&["validate", p]);
        assert_eq!(v.code, PASS, "{name:?}: {}{}", v.stdout, v.stderr);
        let i = tribound(&["iso", p, p]);
        assert_eq!(i.code, PASS, "{name:?}: {}", i.stdout);
        let a = tribound(&["analyze", p]);
        assert_eq!(a.code, PASS, "{name:?}: {}", a.stderr);
    }
}

#[test]
fn non_isomorphic_files_fail() {
    let a = scratch("iso_fig8.tri");
    let b = scratch("iso_sibling.tri");
    tribound(&["builtin", "fig8", "--emit", a.to_str().unwrap()]);
    tribound(&["builtin", "sibling", "--emit", b.to_str().unwrap()]);
    assert_eq!(tribound(&["iso", a.to_str().unwrap(), b.to_str().unwrap()]).code, FAIL);
}

#[test]
fn defective_file_fails_validation() {
    let path = scratch("unglued.tri");
    std::fs::write(&path, "dimension 3\nsimplices 2\npartial false\n0 (1,2,3) 1 (3,2,1)\n").unwrap();
    let o = tribound(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.code, FAIL);
    assert!(o.stdout.contains("unglued"), "{}", o.stdout);
}

#[test]
fn cycles_with_valence() {
    let path = scratch("paper.tri");
    let p = path.to_str().unwrap();
    tribound(&["builtin", "paperT", "--emit", p]);
    assert_eq!(tribound(&["cycles", p, "--valence", "6"]).code, PASS);
    assert_eq!(tribound(&["cycles", p, "--valence", "5"]).code, FAIL);
    let links = tribound(&["links", p]);
    assert_eq!(links.code, PASS);
}

#[test]
fn cusp_commands() {
    let o = tribound(&["cusp", "obstruct", "-1/2+1/2*sqrt(3)*i"]);
    assert_eq!(o.code, FAIL);
    assert!(o.stdout.contains("ObstructionViolated"), "{}", o.stdout);
    let first = o.stdout.lines().next().unwrap();
    let record: serde_json::Value = serde_json::from_str(first).unwrap();
    assert_eq!(record["tag"], "ObstructionViolated");
    assert_eq!(record["rule"], "cusp-pairing");

    assert_eq!(tribound(&["cusp", "obstruct", "2*i"]).code, PASS);
    assert_eq!(tribound(&["cusp", "obstruct", "-1/2+1/2*sqrt(3)*i", "1/2+1/2*sqrt(3)*i"]).code, PASS);

    let c = tribound(&["--json", "cusp", "classify", "-1/2+1/2*sqrt(3)*i"]);
    assert_eq!(c.code, PASS);
    let v: serde_json::Value = serde_json::from_str(&c.stdout).unwrap();
    assert_eq!(v["class"], "Rhombic");
    assert_eq!(v["canonical"], "1/2+1/2*sqrt(3)*i");

    assert_eq!(tribound(&["--epsilon", "1e-9", "cusp", "classify", "0.000000005+2*i"]).code, USAGE);
    assert_eq!(tribound(&["cusp", "classify", "1-i"]).code, USAGE);
}

#[test]
fn verdict_commands() {
    assert_eq!(tribound(&["obstruct-degree", "1", "3"]).code, FAIL);
    assert_eq!(tribound(&["obstruct-degree", "1", "2"]).code, PASS);
    assert_eq!(tribound(&["obstruct-twist", "3"]).code, FAIL);
    assert_eq!(tribound(&["obstruct-twist", "2"]).code, PASS);
    assert_eq!(tribound(&["obstruct-twist", "-3"]).code, PASS);
    let excluded = tribound(&["obstruct-twist", "0"]);
    assert_eq!(excluded.code, USAGE);
    assert!(excluded.stderr.starts_with("error:"), "{}", excluded.stderr);
    assert_eq!(tribound(&["obstruct-euler", "2", "-1"]).code, FAIL);
    assert_eq!(tribound(&["obstruct-euler", "4", "2"]).code, PASS);
}

#[test]
fn usage_errors() {
    assert_eq!(tribound(&[]).code, USAGE);
    assert_eq!(tribound(&["frobnicate"]).code, USAGE);
    assert_eq!(tribound(&["validate"]).code, USAGE);
    assert_eq!(tribound(&["validate", "/nonexistent/file.tri"]).code, USAGE);
    assert_eq!(tribound(&["builtin", "trefoil"]).code, USAGE);
    let help = tribound(&["--help"]);
    assert_eq!(help.code, PASS);
    assert!(help.stdout.contains("verify-paper"));
    let json = tribound(&["--json", "builtin", "trefoil"]);
    assert_eq!(json.code, USAGE);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("trefoil"));
}

#[test]
fn reports_are_deterministic() {
    let path = scratch("determinism.tri");
    let p = path.to_str().unwrap();
    tribound(&["builtin", "paperT", "--emit", p]);
    for args in [
        vec!["verify-paper"],
        vec!["--json", "verify-paper"],
        vec!["analyze", p],
        vec!["--json", "analyze", p],
        vec!["--json", "links", p],
        vec!["cusp", "obstruct", "1/5+3/2*i", "-1/5+3/2*i", "i"],
    ] {
        let a = tribound(&args);
        let b = tribound(&args);
        assert_eq!((a.code, &a.stdout, &a.stderr), (b.code, &b.stdout, &b.stderr), "{args:?}");
    }
}

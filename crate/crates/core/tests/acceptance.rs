//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Runs without the libtest harness so the lines always reach the log.

mod common;

use std::time::{Duration, Instant};

use tribound::construct::cone;
use tribound::constructions::{builtin, verify_paper_t, BuiltinName};
use tribound::cusp::{
    classify_shape, euler_parity_obstruction, pairing_obstruction_3d, parse_modulus, reduce_modulus,
    trace_field_obstruction, twist_knot_verdict, unoriented_canonical, Modulus, ShapeClass, VerdictTag,
};
use tribound::faces::face_classes;
use tribound::iso::isomorphism;
use tribound::links::vertex_links;
use tribound::orient::orient;

use common::{as_partition, corpus, oracle_face_classes, oracle_orientable, random_exact_modulus, random_word, rng};

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))?;
    Ok(format!("{detail} in {elapsed:.2?}"))
}

fn paper_reproduction() -> Outcome {
    within(Duration::from_secs(5), || {
        let report = verify_paper_t();
        let failed: Vec<u8> = report.checks.iter().filter(|c| !c.passed).map(|c| c.id).collect();
        ensure(report.checks.len() == 7 && failed.is_empty(), || format!("failed checks {failed:?}"))?;
        Ok("7/7 checks".into())
    })
}

fn cone_identity() -> Outcome {
    for (base, table) in [(BuiltinName::Fig8, BuiltinName::ConeY), (BuiltinName::Sibling, BuiltinName::ConeXZ)] {
        let coned = cone(&builtin(base).data).map_err(|e| e.to_string())?;
        ensure(coned == builtin(table).data, || format!("cone({}) differs from {}", base.as_str(), table.as_str()))?;
    }
    Ok("cone(fig8) = coneY, cone(sibling) = coneXZ".into())
}

fn sibling_obstruction() -> Outcome {
    let omega = parse_modulus("-1/2+1/2*sqrt(3)*i", None).map_err(|e| e.to_string())?;
    let class = classify_shape(&omega).map_err(|e| e.to_string())?;
    ensure(class == ShapeClass::Rhombic, || format!("omega classified {class:?}"))?;
    let v = pairing_obstruction_3d(&[omega]).map_err(|e| e.to_string())?;
    ensure(v.tag == VerdictTag::ObstructionViolated, || format!("verdict {}", v.tag))?;
    Ok("omega is Rhombic, [omega] is ObstructionViolated".into())
}

fn sl2z_suite() -> Outcome {
    within(Duration::from_secs(10), || {
        let mut r = rng(4);
        for case in 0..1000 {
            let z = random_exact_modulus(&mut r);
            let w = random_word(&mut r, 20);
            let moved = Modulus::Exact(w.apply(&z));
            let mirror = Modulus::Exact(z.mirror());
            let z = Modulus::Exact(z);
            let fail = |what: &str| format!("case {case}: {what} fails for {z} under {w}");
            let reduced = reduce_modulus(&z).map_err(|e| e.to_string())?.modulus;
            ensure(reduce_modulus(&moved).map_err(|e| e.to_string())?.modulus == reduced, || fail("invariance"))?;
            ensure(reduce_modulus(&reduced).map_err(|e| e.to_string())?.modulus == reduced, || fail("idempotence"))?;
            let class = classify_shape(&z).map_err(|e| e.to_string())?;
            ensure(classify_shape(&moved).map_err(|e| e.to_string())? == class, || fail("classification"))?;
            ensure(
                unoriented_canonical(&z).map_err(|e| e.to_string())?
                    == unoriented_canonical(&mirror).map_err(|e| e.to_string())?,
                || fail("mirror"),
            )?;
        }
        Ok("1000 moduli, 4 properties, 0 failures".into())
    })
}

fn oracle_equivalence() -> Outcome {
    let corpus = corpus();
    let mut mutations = 0;
    for (name, t) in &corpus {
        mutations += name.starts_with("mutation_") as usize;
        for k in 0..t.dimension() {
            let got = face_classes(t, k).map_err(|e| format!("{name}: {e}"))?;
            ensure(as_partition(&got.classes) == oracle_face_classes(t, k), || format!("{name}: {k}-faces differ"))?;
        }
        let orientable = orient(t).map_err(|e| format!("{name}: {e}"))?.is_orientable();
        ensure(orientable == oracle_orientable(t), || format!("{name}: orientability differs"))?;
    }
    ensure(mutations == 100, || format!("{mutations} mutations"))?;
    Ok(format!("{} triangulations ({mutations} mutations)", corpus.len()))
}

fn degree_and_parity_rules() -> Outcome {
    use VerdictTag::*;
    let tag = |v: tribound::Result<tribound::cusp::Verdict>| v.map(|v| v.tag).map_err(|e| e.to_string());
    let twist = |m| twist_knot_verdict(m).map(|t| t.verdict.tag).map_err(|e| e.to_string());
    let table: Vec<(&str, Result<VerdictTag, String>, VerdictTag)> = vec![
        ("trace(1,3)", tag(trace_field_obstruction(1, 3)), ObstructionViolated),
        ("trace(1,5)", tag(trace_field_obstruction(1, 5)), ObstructionViolated),
        ("trace(1,7)", tag(trace_field_obstruction(1, 7)), ObstructionViolated),
        ("twist(3)", twist(3), ObstructionViolated),
        ("twist(2)", twist(2), Inconclusive),
        ("euler(2,-1)", tag(euler_parity_obstruction(2, -1)), ObstructionViolated),
        ("euler(4,1)", tag(euler_parity_obstruction(4, 1)), ObstructionViolated),
        ("euler(4,-1)", tag(euler_parity_obstruction(4, -1)), ObstructionViolated),
    ];
    for (name, got, want) in &table {
        ensure(got.as_ref() == Ok(want), || format!("{name}: {got:?}, expected {want}"))?;
    }
    Ok(format!("{} table rows", table.len()))
}

fn large_link_invariants() -> Outcome {
    let t = builtin(BuiltinName::PaperT).data;
    let links = vertex_links(&t).map_err(|e| e.to_string())?;
    let (large, small): (Vec<_>, Vec<_>) = links.iter().partition(|l| l.link.simplex_count() > 2);
    ensure(large.len() == 1 && small.len() == 3, || "expected one large and three small links".into())?;
    let big = &large[0].link;
    ensure(big.simplex_count() == 24, || format!("{} simplices", big.simplex_count()))?;
    ensure(orient(big).map_err(|e| e.to_string())?.is_orientable(), || "not orientable".into())?;
    for l in &small {
        let vertices = face_classes(&l.link, 0).map_err(|e| e.to_string())?.count();
        ensure(vertices == 1, || format!("small link has {vertices} vertex classes"))?;
        ensure(isomorphism(big, &l.link).map_err(|e| e.to_string())?.is_none(), || "isomorphic to a small link".into())?;
    }
    // one vertex class per cusp: the large link has several, measured here
    let cusps = face_classes(big, 0).map_err(|e| e.to_string())?.count();
    Ok(format!("24 tetrahedra, orientable, {cusps} vertex classes, not isomorphic to the 2-tetrahedron links"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        (1, "assembled triangulation reproduction", paper_reproduction),
        (2, "cone identity", cone_identity),
        (3, "sibling obstruction", sibling_obstruction),
        (4, "SL(2,Z) property suite", sl2z_suite),
        (5, "oracle equivalence", oracle_equivalence),
        (6, "degree and parity rules", degree_and_parity_rules),
        (7, "24-tetrahedron link invariants", large_link_invariants),
    ];
    let mut failures = 0;
    for (id, name, check) in criteria {
        match check() {
            Ok(detail) => println!("criterion {id}: PASS {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("criterion {id}: FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {}/7 passed", 7 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

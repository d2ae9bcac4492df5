//! The `tribound` command line. Exit status: 0 pass or no obstruction found,
//! 1 check failed or obstruction found, 2 usage or input error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::constructions::{builtin_by_name, embedding_volume_bound, verify_paper_t, VerificationReport, VolumeBound};
use crate::cusp::{
    euler_parity_obstruction, pairing_obstruction_3d, parse_modulus, shape_report, trace_field_obstruction,
    twist_knot_verdict, Modulus, ShapeReport, Verdict,
};
use crate::cycles::{check_valence, ridge_cycles, CycleTrace, ValenceReport};
use crate::error::Error;
use crate::faces::{euler_characteristic, f_vector};
use crate::format::{parse, serialize};
use crate::iso::{isomorphism, Isomorphism};
use crate::links::vertex_links;
use crate::orient::{orient, Orientation};
use crate::perm::format_labels;
use crate::triangulation::{Triangulation, ValidationReport};

pub const PASS: i32 = 0;
pub const FAIL: i32 = 1;
pub const USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "tribound", version, about = "Facet-pairing triangulations and obstructions to bounding geometrically")]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,

    /// Tolerance for the floating-point cusp path (forces it)
    #[arg(long, global = true, value_name = "VAL")]
    epsilon: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a triangulation file for structural defects
    Validate { file: PathBuf },
    /// Validation, orientability, face counts, cycles, links and volume bound
    Analyze { file: PathBuf },
    /// Cycles of codimension-2 faces with their return maps
    Cycles {
        file: PathBuf,
        /// Fail unless every cycle has this length and a trivial return map
        #[arg(long)]
        valence: Option<usize>,
    },
    /// Vertex links as triangulations
    Links { file: PathBuf },
    /// Search for a combinatorial isomorphism between two triangulations
    Iso { first: PathBuf, second: PathBuf },
    /// Print a named triangulation (fig8, sibling, coneY, coneXZ, paperT)
    Builtin {
        name: String,
        /// Write the triangulation file here instead of printing it
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Rebuild the 4-dimensional construction and run the seven checks
    VerifyPaper,
    /// Cusp-shape tools
    Cusp {
        #[command(subcommand)]
        command: CuspCommand,
    },
    /// Trace-field degree rule
    ObstructDegree { num_cusps: u64, degree: u64 },
    /// Twist knot complement K_m
    ObstructTwist {
        #[arg(allow_hyphen_values = true)]
        m: i64,
    },
    /// Euler characteristic parity rule
    ObstructEuler {
        n: i64,
        #[arg(allow_hyphen_values = true)]
        chi: i64,
    },
}

#[derive(Subcommand, Debug)]
enum CuspCommand {
    /// Reduce a modulus and classify its torus
    Classify {
        #[arg(allow_hyphen_values = true)]
        modulus: String,
    },
    /// Pairing obstruction over the moduli of all cusps
    Obstruct {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        moduli: Vec<String>,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    json: bool,
}

impl Io<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) {
        let s = if self.json {
            serde_json::to_string_pretty(value).expect("reports serialize")
        } else {
            text()
        };
        let _ = writeln!(self.out, "{}", s.trim_end());
    }

    fn fail(&mut self, e: &Error) -> i32 {
        if self.json {
            let _ = writeln!(self.out, "{}", serde_json::json!({ "error": e.to_string() }));
        } else {
            let _ = writeln!(self.err, "error: {e}");
        }
        USAGE
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    PASS
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    USAGE
                }
            };
        }
    };
    let mut io = Io { out, err, json: cli.json };
    match dispatch(cli.command, cli.epsilon, &mut io) {
        Ok(code) => code,
        Err(e) => io.fail(&e),
    }
}

fn read(path: &Path) -> Result<Triangulation, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn status(ok: bool) -> i32 {
    if ok {
        PASS
    } else {
        FAIL
    }
}

fn verdict_status(v: &Verdict) -> i32 {
    status(!v.is_violated())
}

fn dispatch(command: Command, epsilon: Option<f64>, io: &mut Io) -> Result<i32, Error> {
    match command {
        Command::Validate { file } => {
            let r = read(&file)?.validate();
            io.emit(&r, || validation_text(&r));
            Ok(status(r.valid))
        }
        Command::Analyze { file } => {
            let t = read(&file)?;
            let r = analyze(&t);
            io.emit(&r, || analysis_text(&r));
            Ok(status(r.validation.valid))
        }
        Command::Cycles { file, valence } => {
            let t = read(&file)?;
            require_valid(&t)?;
            let traces = ridge_cycles(&t)?;
            let check = valence.map(|v| check_valence(&t, v)).transpose()?;
            #[derive(Serialize)]
            struct Out<'a> {
                cycles: &'a [CycleTrace],
                valence: &'a Option<ValenceReport>,
            }
            io.emit(&Out { cycles: &traces, valence: &check }, || {
                let mut s = String::new();
                for (i, tr) in traces.iter().enumerate() {
                    s += &format!(
                        "cycle {}: length {}, return map {} ({})\n  {}\n",
                        i + 1,
                        tr.length,
                        format_labels(tr.return_map.iter().copied()),
                        if tr.trivial { "trivial" } else { "nontrivial" },
                        tr.render(|x| x.to_string())
                    );
                }
                if let Some(c) = &check {
                    s += &format!(
                        "valence {}: {} ({} cycles, {} offending)\n",
                        c.required,
                        if c.passed { "PASS" } else { "FAIL" },
                        c.cycle_count,
                        c.offending.len()
                    );
                }
                s
            });
            Ok(status(check.is_none_or(|c| c.passed)))
        }
        Command::Links { file } => {
            let t = read(&file)?;
            require_valid(&t)?;
            let links = vertex_links(&t)?;
            io.emit(&links, || {
                let mut s = String::new();
                for (i, l) in links.iter().enumerate() {
                    let first = &l.incidences[0];
                    s += &format!(
                        "vertex class {} (first incidence {}:{}): {} simplices, {}\n",
                        i + 1,
                        first.simplex,
                        format_labels(first.vertices.iter().copied()),
                        l.link.simplex_count(),
                        if l.link.is_partial() { "partial" } else { "closed" }
                    );
                    for line in serialize(&l.link).lines() {
                        s += &format!("  {line}\n");
                    }
                }
                s
            });
            Ok(PASS)
        }
        Command::Iso { first, second } => {
            let a = read(&first)?;
            let b = read(&second)?;
            require_valid(&a)?;
            require_valid(&b)?;
            let found = isomorphism(&a, &b)?;
            #[derive(Serialize)]
            struct Out<'a> {
                isomorphic: bool,
                witness: &'a Option<Isomorphism>,
            }
            io.emit(&Out { isomorphic: found.is_some(), witness: &found }, || match &found {
                None => "not isomorphic\n".to_string(),
                Some(iso) => {
                    let mut s = "isomorphic\n".to_string();
                    for (src, (dst, relabel)) in iso.simplex_map.iter().zip(&iso.relabelings).enumerate() {
                        s += &format!("  {src} -> {dst} labels {}\n", format_labels(relabel.iter().copied()));
                    }
                    s
                }
            });
            Ok(status(found.is_some()))
        }
        Command::Builtin { name, emit } => {
            let b = builtin_by_name(&name)?;
            let text = serialize(&b.data);
            match emit {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
                    #[derive(Serialize)]
                    struct Out<'a> {
                        name: &'a str,
                        written: String,
                    }
                    io.emit(&Out { name: b.name.as_str(), written: path.display().to_string() }, || {
                        format!("wrote {} to {}\n", b.name, path.display())
                    });
                }
                None => io.emit(&b, || text.clone()),
            }
            Ok(PASS)
        }
        Command::VerifyPaper => {
            let r = verify_paper_t();
            io.emit(&r, || verification_text(&r));
            Ok(status(r.all_passed))
        }
        Command::Cusp { command } => match command {
            CuspCommand::Classify { modulus } => {
                let z = parse_modulus(&modulus, epsilon)?;
                let r = shape_report(&z)?;
                io.emit(&r, || shape_text(&r));
                Ok(PASS)
            }
            CuspCommand::Obstruct { moduli } => {
                let zs = moduli
                    .iter()
                    .map(|m| parse_modulus(m, epsilon))
                    .collect::<Result<Vec<Modulus>, _>>()?;
                let v = pairing_obstruction_3d(&zs)?;
                io.emit(&v, || verdict_text(&v));
                Ok(verdict_status(&v))
            }
        },
        Command::ObstructDegree { num_cusps, degree } => {
            let v = trace_field_obstruction(num_cusps, degree)?;
            io.emit(&v, || verdict_text(&v));
            Ok(verdict_status(&v))
        }
        Command::ObstructTwist { m } => {
            let r = twist_knot_verdict(m)?;
            io.emit(&r, || {
                let degree = r.degree.map_or("unknown".to_string(), |d| d.to_string());
                format!("twist knot K_{m}: trace-field degree {degree}\n{}", verdict_text(&r.verdict))
            });
            Ok(verdict_status(&r.verdict))
        }
        Command::ObstructEuler { n, chi } => {
            let v = euler_parity_obstruction(n, chi)?;
            io.emit(&v, || verdict_text(&v));
            Ok(verdict_status(&v))
        }
    }
}

fn require_valid(t: &Triangulation) -> Result<(), Error> {
    let r = t.validate();
    if r.valid {
        Ok(())
    } else {
        Err(Error::Invalid(r.summary()))
    }
}

#[derive(Serialize)]
struct CycleSummary {
    count: usize,
    /// length -> number of cycles
    lengths: BTreeMap<usize, usize>,
    nontrivial_return_maps: usize,
}

#[derive(Serialize)]
struct Analysis {
    validation: ValidationReport,
    orientation: Option<Orientation>,
    f_vector: Option<Vec<usize>>,
    euler_characteristic: Option<i64>,
    cycles: Option<CycleSummary>,
    link_sizes: Option<Vec<usize>>,
    volume_bound: Option<VolumeBound>,
    volume_bound_unavailable: Option<String>,
}

fn analyze(t: &Triangulation) -> Analysis {
    let validation = t.validate();
    let valid = validation.valid;
    let cycles = if valid { ridge_cycles(t).ok() } else { None };
    let (volume_bound, volume_bound_unavailable) = if valid && t.dimension() == 4 {
        match embedding_volume_bound(t) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    Analysis {
        orientation: valid.then(|| orient(t).ok()).flatten(),
        f_vector: valid.then(|| f_vector(t).ok()).flatten(),
        euler_characteristic: valid.then(|| euler_characteristic(t).ok()).flatten(),
        cycles: cycles.map(|traces| {
            let mut lengths = BTreeMap::new();
            for tr in &traces {
                *lengths.entry(tr.length).or_insert(0) += 1;
            }
            CycleSummary {
                count: traces.len(),
                lengths,
                nontrivial_return_maps: traces.iter().filter(|t| !t.trivial).count(),
            }
        }),
        link_sizes: (valid && t.dimension() >= 2)
            .then(|| vertex_links(t).ok())
            .flatten()
            .map(|ls| ls.iter().map(|l| l.link.simplex_count()).collect()),
        volume_bound,
        volume_bound_unavailable,
        validation,
    }
}

fn validation_text(r: &ValidationReport) -> String {
    let mut s = format!(
        "{}: dimension {}, {} simplices, {} gluings, {}\n",
        if r.valid { "valid" } else { "INVALID" },
        r.dimension,
        r.simplex_count,
        r.gluing_count,
        if r.partial { "partial" } else { "closed" }
    );
    for d in &r.defects {
        s += &format!("  defect: {d}\n");
    }
    for w in &r.warnings {
        s += &format!("  warning: {w}\n");
    }
    if !r.free_facets.is_empty() {
        let free: Vec<String> = r.free_facets.iter().map(|f| f.to_string()).collect();
        s += &format!("  free facets: {}\n", free.join(" "));
    }
    s
}

fn analysis_text(a: &Analysis) -> String {
    let mut s = validation_text(&a.validation);
    if let Some(o) = &a.orientation {
        s += &match o {
            Orientation::Orientable(assignment) => {
                let signs: Vec<String> = assignment.signs.iter().map(|x| if *x > 0 { "+" } else { "-" }.to_string()).collect();
                format!("orientable: signs {}\n", signs.join(""))
            }
            Orientation::NotOrientable(w) => {
                let g: Vec<String> = w.gluings.iter().map(|x| format!("#{x}")).collect();
                format!("not orientable: witness cycle through gluings {}\n", g.join(" "))
            }
        };
    }
    if let Some(f) = &a.f_vector {
        s += &format!("f-vector: {f:?}\n");
    }
    if let Some(chi) = a.euler_characteristic {
        s += &format!("Euler characteristic: {chi}\n");
    }
    if let Some(c) = &a.cycles {
        let lens: Vec<String> = c.lengths.iter().map(|(l, n)| format!("{n} of length {l}")).collect();
        s += &format!(
            "ridge cycles: {} ({}), {} with nontrivial return map\n",
            c.count,
            lens.join(", "),
            c.nontrivial_return_maps
        );
    }
    if let Some(l) = &a.link_sizes {
        s += &format!("vertex classes: {}, link sizes {l:?}\n", l.len());
    }
    if let Some(v) = &a.volume_bound {
        s += &format!("volume bound: {} (witness volume {})\n", v.bound, v.witness_volume);
    }
    if let Some(why) = &a.volume_bound_unavailable {
        s += &format!("volume bound unavailable: {why}\n");
    }
    s
}

fn verification_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        s += &format!(
            "check {} {}: {}\n  {}\n",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    s += "vertex links:\n";
    for (i, l) in r.links.iter().enumerate() {
        let iso: Vec<&str> = l.isomorphic_to.iter().map(|n| n.as_str()).collect();
        s += &format!(
            "  class {}: {} tetrahedra, {}, {}, {} vertex class(es), isomorphic to {}\n",
            i + 1,
            l.simplex_count,
            if l.closed { "closed" } else { "partial" },
            match l.orientable {
                Some(true) => "orientable",
                Some(false) => "non-orientable",
                None => "orientability unknown",
            },
            l.vertex_classes.map_or("?".to_string(), |v| v.to_string()),
            if iso.is_empty() { "none".to_string() } else { iso.join(", ") }
        );
    }
    s += "notes:\n";
    for n in &r.notes {
        s += &format!("  {n}\n");
    }
    let passed = r.checks.iter().filter(|c| c.passed).count();
    s += &format!(
        "result: {} ({passed}/{} checks)\n",
        if r.all_passed { "PASS" } else { "FAIL" },
        r.checks.len()
    );
    s
}

fn shape_text(r: &ShapeReport) -> String {
    format!(
        "input: {}\ncanonical: {}\nword: {}\nclass: {}\nadmits involution: {}\nunoriented: {}\n",
        r.input,
        r.canonical,
        r.word,
        r.class,
        if r.admits_involution { "yes" } else { "no" },
        r.unoriented
    )
}

fn verdict_text(v: &Verdict) -> String {
    format!(
        "{}\nverdict: {} ({})\nreason: {}\n",
        serde_json::to_string(v).expect("verdict serializes"),
        v.tag,
        v.rule,
        v.reason
    )
}

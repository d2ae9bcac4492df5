//! One-sided obstructions to bounding geometrically. A verdict either proves
//! that a manifold cannot be the totally geodesic boundary of a hyperbolic
//! manifold, or says nothing.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::modulus::{shape_report, Modulus, ShapeClass, AMBIGUITY_FACTOR};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictTag {
    /// Cannot bound geometrically.
    ObstructionViolated,
    Inconclusive,
    Inapplicable,
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictTag::ObstructionViolated => "ObstructionViolated",
            VerdictTag::Inconclusive => "Inconclusive",
            VerdictTag::Inapplicable => "Inapplicable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Non-rectangular torus cusps pair up.
    CuspPairing,
    /// Cusps without a free orientation-reversing involution pair up.
    CuspPairingGeneral,
    /// One cusp and odd invariant trace-field degree.
    TraceFieldDegree,
    TwistKnot,
    EulerParity,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::CuspPairing => "cusp-pairing",
            Rule::CuspPairingGeneral => "cusp-pairing-general",
            Rule::TraceFieldDegree => "trace-field-degree",
            Rule::TwistKnot => "twist-knot",
            Rule::EulerParity => "euler-parity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub rule: Rule,
    pub reason: String,
}

impl Verdict {
    fn new(tag: VerdictTag, rule: Rule, reason: impl Into<String>) -> Self {
        Verdict { tag, rule, reason: reason.into() }
    }

    pub fn is_violated(&self) -> bool {
        self.tag == VerdictTag::ObstructionViolated
    }
}

const MIRROR_NOTE: &str = "shapes are compared up to orientation (z identified with -conj(z))";

/// Non-rectangular cusps of a geometrically bounding 3-manifold are
/// isometric in pairs, so any non-rectangular shape of odd multiplicity is
/// an obstruction. Rhombic shapes count as non-rectangular.
pub fn pairing_obstruction_3d(moduli: &[Modulus]) -> Result<Verdict> {
    if moduli.is_empty() {
        return Err(Error::Precondition("at least one cusp modulus is required".into()));
    }
    let mut shapes: Vec<(Modulus, usize)> = Vec::new();
    for (i, z) in moduli.iter().enumerate() {
        let report = match shape_report(z) {
            Ok(r) => r,
            Err(Error::Ambiguous { detail, .. }) => {
                return Ok(Verdict::new(
                    VerdictTag::Inapplicable,
                    Rule::CuspPairing,
                    format!("cusp #{} ({z}) is boundary-ambiguous: {detail}; {MIRROR_NOTE}", i + 1),
                ))
            }
            Err(e) => return Err(e),
        };
        if report.class == ShapeClass::Rectangular {
            continue;
        }
        let mut found = false;
        for (key, count) in shapes.iter_mut() {
            match same_shape(key, &report.unoriented) {
                Some(true) => {
                    *count += 1;
                    found = true;
                    break;
                }
                Some(false) => {}
                None => {
                    return Ok(Verdict::new(
                        VerdictTag::Inapplicable,
                        Rule::CuspPairing,
                        format!(
                            "cannot decide whether cusp #{} ({z}) has shape {key}: the difference is within the ambiguity band; {MIRROR_NOTE}",
                            i + 1
                        ),
                    ))
                }
            }
        }
        if !found {
            shapes.push((report.unoriented, 1));
        }
    }
    let mut odd: Vec<String> = shapes
        .iter()
        .filter(|(_, c)| c % 2 == 1)
        .map(|(k, c)| format!("{k} (x{c})"))
        .collect();
    odd.sort();
    Ok(if odd.is_empty() {
        Verdict::new(
            VerdictTag::Inconclusive,
            Rule::CuspPairing,
            format!("every non-rectangular cusp shape occurs an even number of times; rectangular cusps are unconstrained; {MIRROR_NOTE}"),
        )
    } else {
        Verdict::new(
            VerdictTag::ObstructionViolated,
            Rule::CuspPairing,
            format!(
                "non-rectangular cusp shape(s) with odd multiplicity: {}; the non-rectangular cusps of a geometrically bounding 3-manifold are isometric in pairs; {MIRROR_NOTE}",
                odd.join(", ")
            ),
        )
    })
}

/// `Some(equal)` or `None` when a float comparison falls in the ambiguity band.
fn same_shape(a: &Modulus, b: &Modulus) -> Option<bool> {
    if let (Modulus::Exact(x), Modulus::Exact(y)) = (a, b) {
        return Some(x == y);
    }
    let eps = [a, b]
        .iter()
        .filter_map(|m| match m {
            Modulus::Float(f) => Some(f.epsilon),
            Modulus::Exact(_) => None,
        })
        .fold(0.0, f64::max);
    let (ar, ai) = a.approx();
    let (br, bi) = b.approx();
    let d = (ar - br).abs().max((ai - bi).abs());
    if d <= eps {
        Some(true)
    } else if d <= AMBIGUITY_FACTOR * eps {
        None
    } else {
        Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspDescriptor {
    pub label: String,
    /// Opaque token; equal tokens mean isometric cusps.
    pub isometry_class: String,
    /// Admits a fixed-point-free orientation-reversing isometric involution.
    pub has_ffor_involution: bool,
}

impl CuspDescriptor {
    pub fn new(label: impl Into<String>, isometry_class: impl Into<String>, has_ffor_involution: bool) -> Self {
        CuspDescriptor {
            label: label.into(),
            isometry_class: isometry_class.into(),
            has_ffor_involution,
        }
    }

    /// Descriptor of a torus cusp: its unoriented canonical shape and class.
    pub fn from_modulus(label: impl Into<String>, z: &Modulus) -> Result<Self> {
        let r = shape_report(z)?;
        Ok(CuspDescriptor::new(label, r.unoriented.to_string(), r.admits_involution))
    }
}

/// Cusps that lack a fixed-point-free orientation-reversing isometric
/// involution must be isometric in pairs, in any dimension.
pub fn pairing_obstruction_general(cusps: &[CuspDescriptor]) -> Result<Verdict> {
    let mut flags: BTreeMap<&str, (&str, bool)> = BTreeMap::new();
    for c in cusps {
        match flags.get(c.isometry_class.as_str()) {
            Some(&(label, flag)) if flag != c.has_ffor_involution => {
                return Err(Error::InconsistentCusps(format!(
                    "cusps {label:?} and {:?} share class {:?} but disagree on the involution flag",
                    c.label, c.isometry_class
                )))
            }
            Some(_) => {}
            None => {
                flags.insert(&c.isometry_class, (&c.label, c.has_ffor_involution));
            }
        }
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for c in cusps.iter().filter(|c| !c.has_ffor_involution) {
        *counts.entry(&c.isometry_class).or_default() += 1;
    }
    let odd: Vec<String> = counts
        .iter()
        .filter(|(_, n)| *n % 2 == 1)
        .map(|(k, n)| format!("{k} (x{n})"))
        .collect();
    Ok(if odd.is_empty() {
        Verdict::new(
            VerdictTag::Inconclusive,
            Rule::CuspPairingGeneral,
            "every cusp class without a fixed-point-free orientation-reversing involution occurs an even number of times",
        )
    } else {
        Verdict::new(
            VerdictTag::ObstructionViolated,
            Rule::CuspPairingGeneral,
            format!(
                "cusp class(es) without a fixed-point-free orientation-reversing involution occur an odd number of times: {}; such cusps of a geometrically bounding manifold are isometric in pairs",
                odd.join(", ")
            ),
        )
    })
}

/// A single-cusped hyperbolic 3-manifold whose invariant trace field has odd
/// degree does not bound geometrically.
pub fn trace_field_obstruction(num_cusps: u64, degree: u64) -> Result<Verdict> {
    if num_cusps == 0 || degree == 0 {
        return Err(Error::Precondition("cusp count and degree must be at least 1".into()));
    }
    let rule = Rule::TraceFieldDegree;
    Ok(if degree == 1 {
        Verdict::new(
            VerdictTag::Inapplicable,
            rule,
            "degree 1 means a rational invariant trace field, which no cusped hyperbolic 3-manifold has; the input looks wrong",
        )
    } else if num_cusps != 1 {
        Verdict::new(
            VerdictTag::Inconclusive,
            rule,
            format!("the degree rule needs exactly one cusp, got {num_cusps}"),
        )
    } else if degree % 2 == 1 {
        Verdict::new(
            VerdictTag::ObstructionViolated,
            rule,
            format!("one cusp and invariant trace field of odd degree {degree}"),
        )
    } else {
        Verdict::new(
            VerdictTag::Inconclusive,
            rule,
            format!("invariant trace field of even degree {degree} carries no obstruction"),
        )
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistKnotVerdict {
    pub m: i64,
    /// Degree of the invariant trace field of the complement, when known.
    pub degree: Option<u64>,
    pub verdict: Verdict,
}

/// The complement of the m-twist knot. For `m ≥ 2` its invariant trace
/// field has degree `cro(K_m) - 2 = m`.
pub fn twist_knot_verdict(m: i64) -> Result<TwistKnotVerdict> {
    if (-2..=1).contains(&m) {
        return Err(Error::Excluded(format!(
            "twist knot index m = {m} is excluded (m must not be -2, -1, 0 or 1)"
        )));
    }
    if m < 0 {
        return Ok(TwistKnotVerdict {
            m,
            degree: None,
            verdict: Verdict::new(
                VerdictTag::Inapplicable,
                Rule::TwistKnot,
                format!("the degree formula cro(K_m) - 2 = m is only available for m >= 2, got m = {m}"),
            ),
        });
    }
    let degree = m as u64;
    let inner = trace_field_obstruction(1, degree)?;
    Ok(TwistKnotVerdict {
        m,
        degree: Some(degree),
        verdict: Verdict::new(
            inner.tag,
            Rule::TwistKnot,
            format!("K_{m} is a one-cusped knot complement with trace-field degree cro(K_m) - 2 = {m}; {}", inner.reason),
        ),
    })
}

/// A geometrically bounding manifold has even Euler characteristic.
pub fn euler_parity_obstruction(dimension: i64, chi: i64) -> Result<Verdict> {
    if dimension < 2 {
        return Err(Error::Precondition(format!("dimension must be at least 2, got {dimension}")));
    }
    let rule = Rule::EulerParity;
    Ok(match (dimension % 2 == 0, chi) {
        (true, c) if c % 2 != 0 => Verdict::new(
            VerdictTag::ObstructionViolated,
            rule,
            format!("odd Euler characteristic {c} in even dimension {dimension}; a geometrically bounding manifold has even Euler characteristic"),
        ),
        (true, c) => Verdict::new(
            VerdictTag::Inconclusive,
            rule,
            format!("Euler characteristic {c} is even"),
        ),
        (false, 0) => Verdict::new(
            VerdictTag::Inconclusive,
            rule,
            format!("odd dimension {dimension} carries no parity information"),
        ),
        (false, c) => Verdict::new(
            VerdictTag::Inapplicable,
            rule,
            format!("cusped odd-dimensional hyperbolic manifolds have chi = 0; chi = {c} signals bad input"),
        ),
    })
}

//! Cycles of codimension-2 faces ("ridges") and their return maps.
//!
//! A ridge of a simplex lies in exactly two of its facets. Walking around a
//! ridge means leaving through one of them, entering the neighbouring simplex
//! through the glued facet, and leaving again through the other facet of that
//! simplex containing the image ridge, until the starting incidence recurs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::faces::subsets;
use crate::perm::format_labels;
use crate::triangulation::{FacetMap, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleStep {
    pub simplex: usize,
    /// Ordered 1-based labels: the image of the starting tuple.
    pub vertices: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleTrace {
    /// Steps in walk order; the first is the starting ridge, in ascending
    /// label order, and the walk closes back onto it after the last.
    pub steps: Vec<CycleStep>,
    pub length: usize,
    /// Where the starting tuple lands when the walk closes.
    pub return_map: Vec<u8>,
    pub trivial: bool,
}

impl CycleTrace {
    pub fn start(&self) -> &CycleStep {
        &self.steps[0]
    }

    /// `X:(1,2,3) -> Y:(3,1,4) -> ... -> X:(1,2,3)` using `name` for simplices.
    pub fn render(&self, name: impl Fn(usize) -> String) -> String {
        let mut parts: Vec<String> = self
            .steps
            .iter()
            .map(|s| format!("{}:{}", name(s.simplex), format_labels(s.vertices.iter().copied())))
            .collect();
        parts.push(format!(
            "{}:{}",
            name(self.steps[0].simplex),
            format_labels(self.return_map.iter().copied())
        ));
        parts.join(" -> ")
    }
}

/// One trace per class of codimension-2 faces, each starting at the class's
/// least (simplex, sorted ridge) incidence and leaving first through the
/// lexicographically smaller of the two facets containing it.
pub fn ridge_cycles(t: &Triangulation) -> Result<Vec<CycleTrace>> {
    if t.is_partial() {
        return Err(Error::Partial("ridge cycles"));
    }
    let fm = t.facet_map()?;
    Ok(ridge_cycles_with(&fm))
}

pub(crate) fn ridge_cycles_with(fm: &FacetMap) -> Vec<CycleTrace> {
    let n = fm.dimension();
    let full = (1u32 << (n + 1)) - 1;
    let ridges = subsets(n, n - 1);
    let mut seen = std::collections::HashSet::new();
    let mut traces = Vec::new();

    for s0 in 0..fm.simplex_count() {
        for &r0 in &ridges {
            if seen.contains(&(s0, r0)) {
                continue;
            }
            let start: Vec<u8> = (0..=n as u8).filter(|&v| r0 & (1 << v) != 0).collect();
            let rest = full & !r0;
            let low = rest.trailing_zeros() as u8;
            let high = 31 - rest.leading_zeros() as u8;

            // leave through the facet omitting `exit`; `other` is the second
            // label off the ridge
            let (mut s, mut tuple, mut exit, mut other) = (s0, start.clone(), high, low);
            let mut steps = Vec::new();
            loop {
                seen.insert((s, tuple.iter().fold(0u32, |m, &v| m | 1 << v)));
                steps.push(CycleStep {
                    simplex: s,
                    vertices: tuple.iter().map(|&v| v + 1).collect(),
                });
                let nb = fm.across(s, exit).expect("closed triangulation");
                s = nb.simplex;
                tuple = tuple.iter().map(|&v| nb.map.apply(v)).collect();
                let entered = nb.map.apply(exit);
                exit = nb.map.apply(other);
                other = entered;
                let mask = tuple.iter().fold(0u32, |m, &v| m | 1 << v);
                if s == s0 && mask == r0 {
                    debug_assert_eq!(exit, high, "ridge walks never reverse direction");
                    break;
                }
            }
            let trivial = tuple == start;
            traces.push(CycleTrace {
                length: steps.len(),
                steps,
                return_map: tuple.iter().map(|&v| v + 1).collect(),
                trivial,
            });
        }
    }
    traces
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OffendingCycle {
    pub simplex: usize,
    pub ridge: Vec<u8>,
    pub length: usize,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValenceReport {
    pub required: usize,
    pub passed: bool,
    pub cycle_count: usize,
    pub offending: Vec<OffendingCycle>,
}

/// Passes iff every ridge cycle has length `required` and a trivial return map.
pub fn check_valence(t: &Triangulation, required: usize) -> Result<ValenceReport> {
    let traces = ridge_cycles(t)?;
    Ok(valence_of(&traces, required))
}

pub(crate) fn valence_of(traces: &[CycleTrace], required: usize) -> ValenceReport {
    let offending: Vec<OffendingCycle> = traces
        .iter()
        .filter(|c| c.length != required || !c.trivial)
        .map(|c| OffendingCycle {
            simplex: c.start().simplex,
            ridge: c.start().vertices.clone(),
            length: c.length,
            trivial: c.trivial,
        })
        .collect();
    ValenceReport {
        required,
        passed: offending.is_empty(),
        cycle_count: traces.len(),
        offending,
    }
}

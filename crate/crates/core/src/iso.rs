//! Combinatorial isomorphism of facet-pairing triangulations.
//!
//! An isomorphism is a bijection of simplices together with, for each
//! simplex, a bijection of its vertex labels onto those of its image, such
//! that the facet identifications correspond exactly. Once one simplex and
//! its relabeling are fixed, the rest of its connected component is forced by
//! the gluings, so the search tries every (target simplex, relabeling) anchor
//! per component and propagates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::triangulation::{FacetGluing, FacetMap, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    /// `simplex_map[s]` is the image of simplex `s`.
    pub simplex_map: Vec<usize>,
    /// `relabelings[s][l-1]` is the label in the image simplex that label `l`
    /// of `s` is sent to (all 1-based).
    pub relabelings: Vec<Vec<u8>>,
}

impl Isomorphism {
    /// Pushes every gluing of `from` through the maps and checks that the
    /// result is exactly the gluing set of `to`. Independent of the search.
    pub fn verify(&self, from: &Triangulation, to: &Triangulation) -> bool {
        if from.dimension() != to.dimension()
            || from.simplex_count() != to.simplex_count()
            || self.simplex_map.len() != from.simplex_count()
        {
            return false;
        }
        let mut used = vec![false; to.simplex_count()];
        for &s in &self.simplex_map {
            if s >= used.len() || used[s] {
                return false;
            }
            used[s] = true;
        }
        let pushed: Vec<FacetGluing> = from
            .gluings()
            .iter()
            .map(|g| {
                let rf = &self.relabelings[g.from_simplex];
                let rt = &self.relabelings[g.to_simplex];
                FacetGluing::new(
                    self.simplex_map[g.from_simplex],
                    g.from_vertices.iter().map(|&l| rf[(l - 1) as usize]).collect::<Vec<_>>(),
                    self.simplex_map[g.to_simplex],
                    g.to_vertices.iter().map(|&l| rt[(l - 1) as usize]).collect::<Vec<_>>(),
                )
            })
            .collect();
        let image = Triangulation::new(to.dimension(), to.simplex_count(), pushed, to.is_partial());
        image.same_identifications(to)
    }
}

/// Returns the first isomorphism from `a` onto `b` in search order (target
/// simplex index, then lexicographic relabeling), or `None`.
pub fn isomorphism(a: &Triangulation, b: &Triangulation) -> Result<Option<Isomorphism>> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch(a.dimension(), b.dimension()));
    }
    let fa = a.facet_map()?;
    let fb = b.facet_map()?;
    if a.simplex_count() != b.simplex_count() || a.gluings().len() != b.gluings().len() {
        return Ok(None);
    }
    let mut search = Search {
        a: &fa,
        b: &fb,
        map: vec![None; a.simplex_count()],
        inverse: vec![None; b.simplex_count()],
    };
    if !search.components(0) {
        return Ok(None);
    }
    let (simplex_map, relabelings) = search
        .map
        .into_iter()
        .map(|slot| {
            let (t, p) = slot.expect("every simplex mapped");
            (t, p.images().iter().map(|&x| x + 1).collect())
        })
        .unzip();
    Ok(Some(Isomorphism {
        simplex_map,
        relabelings,
    }))
}

struct Search<'a> {
    a: &'a FacetMap,
    b: &'a FacetMap,
    map: Vec<Option<(usize, Perm)>>,
    inverse: Vec<Option<usize>>,
}

impl Search<'_> {
    /// Maps every component of `a` whose least simplex is at least `from`.
    fn components(&mut self, from: usize) -> bool {
        let Some(anchor) = (from..self.map.len()).find(|&s| self.map[s].is_none()) else {
            return true;
        };
        let n = self.a.dimension();
        for target in 0..self.inverse.len() {
            if self.inverse[target].is_some() {
                continue;
            }
            for relabel in Perm::all(n + 1) {
                let mut assigned = Vec::new();
                if self.propagate(anchor, target, relabel, &mut assigned) && self.components(anchor + 1) {
                    return true;
                }
                for s in assigned {
                    let (t, _) = self.map[s].take().expect("assigned");
                    self.inverse[t] = None;
                }
            }
        }
        false
    }

    /// Fixes `anchor -> target` under `relabel` and forces its component.
    /// Records every simplex it assigns so the caller can undo on failure.
    fn propagate(&mut self, anchor: usize, target: usize, relabel: Perm, assigned: &mut Vec<usize>) -> bool {
        let n = self.a.dimension();
        self.map[anchor] = Some((target, relabel));
        self.inverse[target] = Some(anchor);
        assigned.push(anchor);
        let mut stack = vec![anchor];
        while let Some(s) = stack.pop() {
            let (t, rho) = self.map[s].clone().expect("assigned");
            for omitted in 0..=n as u8 {
                let image_omitted = rho.apply(omitted);
                match (self.a.across(s, omitted), self.b.across(t, image_omitted)) {
                    (None, None) => {}
                    (Some(na), Some(nb)) => {
                        // label x of na.simplex -> rho(phi^-1(x)) -> psi(...)
                        let forced = nb.map.compose(&rho).compose(&na.map.inverse());
                        match &self.map[na.simplex] {
                            Some((t2, p2)) => {
                                if *t2 != nb.simplex || *p2 != forced {
                                    return false;
                                }
                            }
                            None => {
                                if self.inverse[nb.simplex].is_some() {
                                    return false;
                                }
                                self.map[na.simplex] = Some((nb.simplex, forced));
                                self.inverse[nb.simplex] = Some(na.simplex);
                                assigned.push(na.simplex);
                                stack.push(na.simplex);
                            }
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Applies a simplex permutation and per-simplex relabelings (1-based images)
/// to a triangulation. Used to build shuffled copies.
pub fn relabel(t: &Triangulation, simplex_map: &[usize], relabelings: &[Vec<u8>]) -> Triangulation {
    let gluings = t
        .gluings()
        .iter()
        .map(|g| {
            let rf = &relabelings[g.from_simplex];
            let rt = &relabelings[g.to_simplex];
            FacetGluing::new(
                simplex_map[g.from_simplex],
                g.from_vertices.iter().map(|&l| rf[(l - 1) as usize]).collect::<Vec<_>>(),
                simplex_map[g.to_simplex],
                g.to_vertices.iter().map(|&l| rt[(l - 1) as usize]).collect::<Vec<_>>(),
            )
        })
        .collect();
    Triangulation::new(t.dimension(), t.simplex_count(), gluings, t.is_partial())
}

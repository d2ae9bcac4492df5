//! Orientability by sign propagation over the gluing graph.
//!
//! Each simplex carries the orientation of its ascending label order times a
//! sign. A gluing between simplices `s` and `t` whose extended vertex map has
//! permutation sign `p` is orientation-reversing iff `sign(s)·sign(t)·p = -1`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::Result;
use crate::triangulation::{extend_gluing, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationAssignment {
    pub signs: Vec<i8>,
}

impl OrientationAssignment {
    /// Re-checks the defining condition gluing by gluing.
    pub fn satisfies(&self, t: &Triangulation) -> bool {
        t.gluings().iter().all(|g| match extend_gluing(g, t.dimension()) {
            Ok(ext) => {
                self.signs[g.from_simplex] * self.signs[g.to_simplex] * ext.map.sign() == -1
            }
            Err(_) => false,
        })
    }
}

/// A closed walk of gluings (by index) along which the required sign
/// relations multiply to -1, so no sign assignment can satisfy them all.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonOrientableWitness {
    pub gluings: Vec<usize>,
}

impl NonOrientableWitness {
    /// Product over the walk of `-parity(g)`; -1 certifies non-orientability
    /// because every simplex sign along a closed walk appears an even number
    /// of times.
    pub fn relation_product(&self, t: &Triangulation) -> i8 {
        self.gluings
            .iter()
            .map(|&i| -extend_gluing(&t.gluings()[i], t.dimension()).expect("validated").map.sign())
            .product()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Orientation {
    Orientable(OrientationAssignment),
    NotOrientable(NonOrientableWitness),
}

impl Orientation {
    pub fn is_orientable(&self) -> bool {
        matches!(self, Orientation::Orientable(_))
    }
}

/// Finds a sign per simplex making every gluing orientation-reversing, with
/// the first simplex of each connected component fixed to +1. Free facets
/// impose nothing.
pub fn orient(t: &Triangulation) -> Result<Orientation> {
    t.facet_map()?;
    let n = t.dimension();
    let count = t.simplex_count();

    // incident gluings per simplex: (gluing, other simplex, required relation)
    let mut edges: Vec<Vec<(usize, usize, i8)>> = vec![Vec::new(); count];
    for (i, g) in t.gluings().iter().enumerate() {
        let relation = -extend_gluing(g, n)?.map.sign();
        if g.from_simplex == g.to_simplex {
            if relation == -1 {
                return Ok(Orientation::NotOrientable(NonOrientableWitness { gluings: vec![i] }));
            }
            continue;
        }
        edges[g.from_simplex].push((i, g.to_simplex, relation));
        edges[g.to_simplex].push((i, g.from_simplex, relation));
    }

    let mut signs = vec![0i8; count];
    // tree edge (gluing, parent) used to reach each simplex
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; count];
    for root in 0..count {
        if signs[root] != 0 {
            continue;
        }
        signs[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(s) = queue.pop_front() {
            for &(g, other, relation) in &edges[s] {
                let wanted = signs[s] * relation;
                if signs[other] == 0 {
                    signs[other] = wanted;
                    parent[other] = Some((g, s));
                    queue.push_back(other);
                } else if signs[other] != wanted {
                    return Ok(Orientation::NotOrientable(witness(&parent, s, other, g)));
                }
            }
        }
    }
    Ok(Orientation::Orientable(OrientationAssignment { signs }))
}

fn witness(parent: &[Option<(usize, usize)>], a: usize, b: usize, closing: usize) -> NonOrientableWitness {
    let path_to_root = |mut s: usize| {
        let mut path = Vec::new();
        let mut nodes = vec![s];
        while let Some((g, p)) = parent[s] {
            path.push(g);
            nodes.push(p);
            s = p;
        }
        (path, nodes)
    };
    let (mut pa, na) = path_to_root(a);
    let (mut pb, nb) = path_to_root(b);
    // drop the shared stretch near the root
    let (mut ia, mut ib) = (na.len(), nb.len());
    while ia > 0 && ib > 0 && na[ia - 1] == nb[ib - 1] {
        ia -= 1;
        ib -= 1;
    }
    pa.truncate(ia);
    pb.truncate(ib);
    // walk: common ancestor -> a -> b -> common ancestor
    let mut gluings: Vec<usize> = pa.into_iter().rev().collect();
    gluings.push(closing);
    gluings.extend(pb);
    NonOrientableWitness { gluings }
}

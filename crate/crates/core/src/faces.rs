//! Face identification classes and the Euler characteristic.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::mask_labels;
use crate::triangulation::{FacetMap, Triangulation};

/// A k-face of one simplex, as sorted 1-based labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FaceIncidence {
    pub simplex: usize,
    pub vertices: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceClassPartition {
    pub k: usize,
    /// Classes ordered by their least incidence; members sorted.
    pub classes: Vec<Vec<FaceIncidence>>,
}

impl FaceClassPartition {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, incidence: &FaceIncidence) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(incidence).is_ok())
    }
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(len: usize) -> Self {
        DisjointSet {
            parent: (0..len).collect(),
            rank: vec![0; len],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}

/// All `size`-element subsets of `0..=n` as bitmasks, in lexicographic order
/// of their sorted label lists.
pub(crate) fn subsets(n: usize, size: usize) -> Vec<u32> {
    fn rec(start: u8, n: u8, left: usize, acc: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for v in start..=n {
            if ((n - v + 1) as usize) < left {
                break;
            }
            rec(v + 1, n, left - 1, acc | 1 << v, out);
        }
    }
    let mut out = Vec::new();
    rec(0, n as u8, size, 0, &mut out);
    out
}

/// Partitions the k-face incidences of a triangulation into the classes
/// identified by the facet gluings. A gluing only identifies faces lying in
/// the glued facet.
pub fn face_classes(t: &Triangulation, k: usize) -> Result<FaceClassPartition> {
    let n = t.dimension();
    if k > n {
        return Err(Error::FaceDimension { k, n });
    }
    let fm = t.facet_map()?;
    Ok(face_classes_with(&fm, k))
}

pub(crate) fn face_classes_with(fm: &FacetMap, k: usize) -> FaceClassPartition {
    let n = fm.dimension();
    let faces = subsets(n, k + 1);
    let index: HashMap<u32, usize> = faces.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let per = faces.len();
    let mut sets = DisjointSet::new(fm.simplex_count() * per);
    let full = (1u32 << (n + 1)) - 1;

    if k < n {
        for s in 0..fm.simplex_count() {
            for omitted in 0..=n as u8 {
                let Some(nb) = fm.across(s, omitted) else { continue };
                let facet = full & !(1 << omitted);
                for (i, &face) in faces.iter().enumerate() {
                    if face & !facet != 0 {
                        continue;
                    }
                    let image = nb.map.apply_mask(face);
                    sets.union(s * per + i, nb.simplex * per + index[&image]);
                }
            }
        }
    }

    let mut by_root: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<FaceIncidence>> = Vec::new();
    // incidence ids already run in (simplex, sorted labels) order
    for id in 0..fm.simplex_count() * per {
        let root = sets.find(id);
        let slot = *by_root.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(FaceIncidence {
            simplex: id / per,
            vertices: mask_labels(faces[id % per]).into_iter().map(|l| l + 1).collect(),
        });
    }
    FaceClassPartition { k, classes }
}

/// Class counts for every face dimension `0..=n`.
pub fn f_vector(t: &Triangulation) -> Result<Vec<usize>> {
    let fm = t.facet_map()?;
    Ok((0..=t.dimension()).map(|k| face_classes_with(&fm, k).count()).collect())
}

/// Alternating sum of face class counts over all dimensions, top simplices
/// included. Closed triangulations only.
pub fn euler_characteristic(t: &Triangulation) -> Result<i64> {
    if t.is_partial() {
        return Err(Error::Partial("the Euler characteristic"));
    }
    let counts = f_vector(t)?;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum())
}

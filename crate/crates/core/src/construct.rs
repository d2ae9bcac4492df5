//! Building triangulations from pieces: cones and assembly along free facets.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::format_labels;
use crate::triangulation::{tuple_mask, FacetGluing, Triangulation};

/// Cone over a triangulation. Every n-simplex becomes an (n+1)-simplex with
/// apex label `n+2`; gluings keep their order and gain the apex in last
/// position. The base facets are left free, as are cones over free facets.
pub fn cone(t: &Triangulation) -> Result<Triangulation> {
    t.facet_map()?;
    let apex = t.dimension() as u8 + 2;
    let gluings = t
        .gluings()
        .iter()
        .map(|g| {
            let mut from = g.from_vertices.clone();
            let mut to = g.to_vertices.clone();
            from.push(apex);
            to.push(apex);
            FacetGluing::new(g.from_simplex, from, g.to_simplex, to)
        })
        .collect();
    Ok(Triangulation::new(t.dimension() + 1, t.simplex_count(), gluings, true))
}

/// One pairing of free facets between (possibly equal) blocks. Simplex
/// indices are local to their block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetPairing {
    pub from_block: usize,
    pub from_simplex: usize,
    pub from_vertices: Vec<u8>,
    pub to_block: usize,
    pub to_simplex: usize,
    pub to_vertices: Vec<u8>,
}

impl FacetPairing {
    pub fn new(
        from_block: usize,
        from_simplex: usize,
        from_vertices: impl Into<Vec<u8>>,
        to_block: usize,
        to_simplex: usize,
        to_vertices: impl Into<Vec<u8>>,
    ) -> Self {
        FacetPairing {
            from_block,
            from_simplex,
            from_vertices: from_vertices.into(),
            to_block,
            to_simplex,
            to_vertices: to_vertices.into(),
        }
    }
}

/// Disjoint union of `blocks` (simplices renumbered block by block, in input
/// order) with one extra gluing per pairing. The result is partial iff some
/// facet remains free.
pub fn assemble(blocks: &[Triangulation], pairings: &[FacetPairing]) -> Result<Triangulation> {
    let Some(first) = blocks.first() else {
        return Err(Error::Assembly("no blocks".into()));
    };
    let n = first.dimension();
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut total = 0;
    let mut gluings = Vec::new();
    let mut free: HashSet<(usize, u32)> = HashSet::new();
    for (b, block) in blocks.iter().enumerate() {
        if block.dimension() != n {
            return Err(Error::Assembly(format!(
                "block {b} has dimension {}, expected {n}",
                block.dimension()
            )));
        }
        let report = block.validate();
        if !report.valid {
            return Err(Error::Assembly(format!("block {b} is invalid: {}", report.summary())));
        }
        for facet in &report.free_facets {
            free.insert((total + facet.simplex, tuple_mask(&facet.vertices)));
        }
        offsets.push(total);
        gluings.extend(block.gluings().iter().map(|g| {
            FacetGluing::new(
                g.from_simplex + total,
                g.from_vertices.clone(),
                g.to_simplex + total,
                g.to_vertices.clone(),
            )
        }));
        total += block.simplex_count();
    }

    for (i, p) in pairings.iter().enumerate() {
        let locate = |block: usize, simplex: usize| -> Result<usize> {
            let b = blocks
                .get(block)
                .ok_or_else(|| Error::Assembly(format!("pairing #{i}: no block {block}")))?;
            if simplex >= b.simplex_count() {
                return Err(Error::Assembly(format!(
                    "pairing #{i}: block {block} has no simplex {simplex}"
                )));
            }
            Ok(offsets[block] + simplex)
        };
        let from = locate(p.from_block, p.from_simplex)?;
        let to = locate(p.to_block, p.to_simplex)?;
        let g = FacetGluing::new(from, p.from_vertices.clone(), to, p.to_vertices.clone());
        g.check_shape(n, i).map_err(|e| Error::Assembly(format!("pairing #{i}: correspondence is not a bijection of facet labels ({e})")))?;
        let from_key = (from, tuple_mask(&p.from_vertices));
        let to_key = (to, tuple_mask(&p.to_vertices));
        if from_key == to_key {
            return Err(Error::Assembly(format!("pairing #{i} pairs a facet with itself")));
        }
        for (key, block, simplex, vertices) in [
            (from_key, p.from_block, p.from_simplex, &p.from_vertices),
            (to_key, p.to_block, p.to_simplex, &p.to_vertices),
        ] {
            if !free.remove(&key) {
                let mut sorted = vertices.clone();
                sorted.sort_unstable();
                return Err(Error::Assembly(format!(
                    "pairing #{i}: facet {} of simplex {simplex} in block {block} is not free",
                    format_labels(sorted)
                )));
            }
        }
        gluings.push(g);
    }

    Ok(Triangulation::new(n, total, gluings, !free.is_empty()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig8() -> Triangulation {
        Triangulation::new(
            3,
            2,
            vec![
                FacetGluing::new(0, [1, 2, 3], 1, [3, 2, 1]),
                FacetGluing::new(0, [1, 2, 4], 1, [1, 4, 2]),
                FacetGluing::new(0, [1, 3, 4], 1, [3, 4, 2]),
                FacetGluing::new(0, [2, 3, 4], 1, [4, 1, 3]),
            ],
            false,
        )
    }

    #[test]
    fn cone_of_lone_simplex_has_no_gluings() {
        let c = cone(&Triangulation::disjoint_simplices(2, 1)).unwrap();
        assert_eq!((c.dimension(), c.simplex_count()), (3, 1));
        assert!(c.gluings().is_empty());
        assert_eq!(c.validate().free_facets.len(), 4);
        // claiming to be closed without gluings is a defect, not a cone input
        assert!(cone(&Triangulation::new(2, 1, vec![], false)).is_err());
    }

    #[test]
    fn cone_appends_apex() {
        let c = cone(&fig8()).unwrap();
        assert_eq!(c.dimension(), 4);
        assert!(c.is_partial());
        assert_eq!(c.gluings()[0], FacetGluing::new(0, [1, 2, 3, 5], 1, [3, 2, 1, 5]));
        let r = c.validate();
        assert!(r.valid);
        assert_eq!(r.free_facets.len(), 2);
        assert!(r.free_facets.iter().all(|f| f.vertices == vec![1, 2, 3, 4]));
    }

    #[test]
    fn double_use_of_a_free_facet_is_rejected() {
        let c = cone(&fig8()).unwrap();
        let pairings = [
            FacetPairing::new(0, 0, [1, 2, 3, 4], 1, 0, [1, 2, 3, 4]),
            FacetPairing::new(0, 0, [1, 2, 3, 4], 1, 1, [1, 2, 3, 4]),
        ];
        let err = assemble(&[c.clone(), c], &pairings).unwrap_err();
        assert!(err.to_string().contains("not free"), "{err}");
    }

    #[test]
    fn non_free_target_is_named() {
        let c = cone(&fig8()).unwrap();
        let pairings = [FacetPairing::new(0, 0, [1, 2, 3, 4], 0, 1, [1, 2, 3, 5])];
        let err = assemble(&[c], &pairings).unwrap_err();
        assert!(err.to_string().contains("(1,2,3,5)"), "{err}");
    }

    #[test]
    fn bad_correspondence_is_rejected() {
        let c = cone(&fig8()).unwrap();
        let pairings = [FacetPairing::new(0, 0, [1, 2, 3, 4], 0, 1, [1, 1, 3, 4])];
        assert!(assemble(&[c], &pairings).is_err());
    }

    #[test]
    fn no_pairings_returns_block_unchanged() {
        let t = fig8();
        assert_eq!(assemble(std::slice::from_ref(&t), &[]).unwrap(), t);
    }

    #[test]
    fn closing_a_cone_pair() {
        let c = cone(&fig8()).unwrap();
        let pairings = [FacetPairing::new(0, 0, [1, 2, 3, 4], 0, 1, [2, 1, 3, 4])];
        let t = assemble(&[c], &pairings).unwrap();
        assert!(!t.is_partial());
        assert!(t.validate().valid);
    }
}

//! Facet-pairing triangulations: the data model, validation, and the
//! extension of a facet correspondence to a full simplex relabeling.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{format_labels, mask_labels, Perm};

/// Largest supported dimension. Vertex sets are kept as `u32` bitmasks and
/// the isomorphism search enumerates `(n+1)!` relabelings per anchor.
pub const MAX_DIMENSION: usize = 16;

/// An ordered identification of a facet of one simplex with a facet of
/// another (or the same) simplex. Position `k` of `from_vertices` is sent to
/// position `k` of `to_vertices`. Labels are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FacetGluing {
    pub from_simplex: usize,
    pub from_vertices: Vec<u8>,
    pub to_simplex: usize,
    pub to_vertices: Vec<u8>,
}

impl FacetGluing {
    pub fn new(
        from_simplex: usize,
        from_vertices: impl Into<Vec<u8>>,
        to_simplex: usize,
        to_vertices: impl Into<Vec<u8>>,
    ) -> Self {
        FacetGluing {
            from_simplex,
            from_vertices: from_vertices.into(),
            to_simplex,
            to_vertices: to_vertices.into(),
        }
    }

    /// The same identification read in the other direction.
    pub fn inverse(&self) -> Self {
        FacetGluing {
            from_simplex: self.to_simplex,
            from_vertices: self.to_vertices.clone(),
            to_simplex: self.from_simplex,
            to_vertices: self.from_vertices.clone(),
        }
    }

    /// Checks tuple shape in dimension `n`: `n` distinct labels from `1..=n+1`.
    pub fn check_shape(&self, n: usize, index: usize) -> Result<()> {
        check_tuple(&self.from_vertices, n, index, "from_vertices")?;
        check_tuple(&self.to_vertices, n, index, "to_vertices")
    }

    /// Key identifying the unordered facet pair and its correspondence,
    /// independent of which side is written first and of the order in which
    /// the facet's vertices are listed.
    pub(crate) fn identification_key(&self) -> (usize, Vec<u8>, usize, Vec<u8>) {
        let forward = sorted_pairs(self.from_simplex, &self.from_vertices, self.to_simplex, &self.to_vertices);
        let backward = sorted_pairs(self.to_simplex, &self.to_vertices, self.from_simplex, &self.from_vertices);
        forward.min(backward)
    }
}

fn sorted_pairs(s: usize, from: &[u8], t: usize, to: &[u8]) -> (usize, Vec<u8>, usize, Vec<u8>) {
    let mut pairs: Vec<(u8, u8)> = from.iter().copied().zip(to.iter().copied()).collect();
    pairs.sort_unstable();
    let (a, b) = pairs.into_iter().unzip();
    (s, a, t, b)
}

fn check_tuple(tuple: &[u8], n: usize, gluing: usize, field: &'static str) -> Result<()> {
    if tuple.len() != n {
        return Err(Error::MalformedGluing {
            gluing,
            field,
            reason: format!("expected {n} labels, found {}", tuple.len()),
        });
    }
    let mut seen = 0u32;
    for &label in tuple {
        if label == 0 || label as usize > n + 1 {
            return Err(Error::MalformedGluing {
                gluing,
                field,
                reason: format!("label {label} outside 1..={}", n + 1),
            });
        }
        let bit = 1u32 << (label - 1);
        if seen & bit != 0 {
            return Err(Error::MalformedGluing {
                gluing,
                field,
                reason: format!("label {label} repeated"),
            });
        }
        seen |= bit;
    }
    Ok(())
}

impl fmt::Display for FacetGluing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.from_simplex,
            format_labels(self.from_vertices.iter().copied()),
            self.to_simplex,
            format_labels(self.to_vertices.iter().copied())
        )
    }
}

/// A gluing extended to a bijection between all vertices of the two simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedGluing {
    pub from_simplex: usize,
    pub to_simplex: usize,
    /// 0-based vertex map of the source simplex onto the target simplex.
    pub map: Perm,
    /// 0-based label of the source vertex not on the glued facet.
    pub omitted: u8,
}

impl ExtendedGluing {
    /// Full 1-based tuples, facet first and the omitted vertex last, e.g.
    /// `(1,2,3,5,4) -> (4,1,2,5,3)`.
    pub fn tuples(&self, facet: &[u8]) -> (Vec<u8>, Vec<u8>) {
        let mut from = facet.to_vec();
        from.push(self.omitted + 1);
        let to = from.iter().map(|&l| self.map.apply(l - 1) + 1).collect();
        (from, to)
    }
}

/// Extends a facet correspondence in dimension `n` by sending the omitted
/// vertex of the source facet to the omitted vertex of the target facet.
pub fn extend_gluing(g: &FacetGluing, n: usize) -> Result<ExtendedGluing> {
    g.check_shape(n, 0)?;
    let full = (1u32 << (n + 1)) - 1;
    let from_mask = g.from_vertices.iter().fold(0u32, |m, &l| m | 1 << (l - 1));
    let to_mask = g.to_vertices.iter().fold(0u32, |m, &l| m | 1 << (l - 1));
    let omitted_from = (full & !from_mask).trailing_zeros() as u8;
    let omitted_to = (full & !to_mask).trailing_zeros() as u8;
    let mut images = vec![0u8; n + 1];
    for (&a, &b) in g.from_vertices.iter().zip(&g.to_vertices) {
        images[(a - 1) as usize] = b - 1;
    }
    images[omitted_from as usize] = omitted_to;
    Ok(ExtendedGluing {
        from_simplex: g.from_simplex,
        to_simplex: g.to_simplex,
        map: Perm::from_images(images).expect("facet bijection extends to a bijection"),
        omitted: omitted_from,
    })
}

/// An n-dimensional triangulation given by simplicial facet pairings.
///
/// Construction performs no checks so that arbitrary candidate data can be
/// handed to [`Triangulation::validate`]; the analysis operations validate
/// first and refuse defective input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    dimension: usize,
    simplex_count: usize,
    gluings: Vec<FacetGluing>,
    partial: bool,
}

/// A facet of a simplex, named by its sorted 1-based vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FacetRef {
    pub simplex: usize,
    pub vertices: Vec<u8>,
}

impl fmt::Display for FacetRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.simplex, format_labels(self.vertices.iter().copied()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Defect {
    NoSimplices,
    DimensionOutOfRange { dimension: usize },
    SimplexOutOfRange { gluing: usize, simplex: usize },
    MalformedTuple { gluing: usize, field: String, reason: String },
    IdentitySelfGluing { gluing: usize },
    FacetGluedToItself { gluing: usize },
    DoubleGlued { facet: FacetRef, gluings: Vec<usize> },
    Unglued { facet: FacetRef },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::NoSimplices => write!(f, "no simplices"),
            Defect::DimensionOutOfRange { dimension } => {
                write!(f, "dimension {dimension} outside 1..={MAX_DIMENSION}")
            }
            Defect::SimplexOutOfRange { gluing, simplex } => {
                write!(f, "gluing #{gluing} references simplex {simplex}, which does not exist")
            }
            Defect::MalformedTuple { gluing, field, reason } => {
                write!(f, "gluing #{gluing} {field}: {reason}")
            }
            Defect::IdentitySelfGluing { gluing } => {
                write!(f, "gluing #{gluing} maps a facet to itself by the identity")
            }
            Defect::FacetGluedToItself { gluing } => {
                write!(f, "gluing #{gluing} pairs a facet with itself")
            }
            Defect::DoubleGlued { facet, gluings } => {
                let list: Vec<String> = gluings.iter().map(|g| format!("#{g}")).collect();
                write!(f, "facet {facet} glued more than once ({})", list.join(", "))
            }
            Defect::Unglued { facet } => write!(f, "facet {facet} unglued"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// Accepted, but the 4-dimensional construction pairs `2k` simplices.
    OddSimplexCount { count: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::OddSimplexCount { count } => write!(f, "odd simplex count {count}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub dimension: usize,
    pub simplex_count: usize,
    pub gluing_count: usize,
    pub partial: bool,
    pub defects: Vec<Defect>,
    pub warnings: Vec<Warning>,
    pub free_facets: Vec<FacetRef>,
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        if self.valid {
            return "valid".to_string();
        }
        let items: Vec<String> = self.defects.iter().map(|d| d.to_string()).collect();
        items.join("; ")
    }
}

impl Triangulation {
    pub fn new(dimension: usize, simplex_count: usize, gluings: Vec<FacetGluing>, partial: bool) -> Self {
        Triangulation {
            dimension,
            simplex_count,
            gluings,
            partial,
        }
    }

    /// `count` simplices of dimension `n` with no gluings (a partial complex).
    pub fn disjoint_simplices(n: usize, count: usize) -> Self {
        Triangulation::new(n, count, Vec::new(), true)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn simplex_count(&self) -> usize {
        self.simplex_count
    }

    pub fn gluings(&self) -> &[FacetGluing] {
        &self.gluings
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    #[cfg(test)]
    pub(crate) fn into_parts(self) -> (usize, usize, Vec<FacetGluing>, bool) {
        (self.dimension, self.simplex_count, self.gluings, self.partial)
    }

    /// Checks every structural invariant and reports all defects found.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dimension;
        let mut defects = Vec::new();
        let mut warnings = Vec::new();
        if self.simplex_count == 0 {
            defects.push(Defect::NoSimplices);
        } else if self.simplex_count % 2 == 1 {
            warnings.push(Warning::OddSimplexCount {
                count: self.simplex_count,
            });
        }
        if n == 0 || n > MAX_DIMENSION {
            defects.push(Defect::DimensionOutOfRange { dimension: n });
            return ValidationReport {
                valid: false,
                dimension: n,
                simplex_count: self.simplex_count,
                gluing_count: self.gluings.len(),
                partial: self.partial,
                defects,
                warnings,
                free_facets: Vec::new(),
            };
        }

        let full = (1u32 << (n + 1)) - 1;
        let mut uses: BTreeMap<(usize, u32), Vec<usize>> = BTreeMap::new();
        for (i, g) in self.gluings.iter().enumerate() {
            let mut ok = true;
            for simplex in [g.from_simplex, g.to_simplex] {
                if simplex >= self.simplex_count {
                    defects.push(Defect::SimplexOutOfRange { gluing: i, simplex });
                    ok = false;
                }
            }
            if let Err(Error::MalformedGluing { field, reason, .. }) = g.check_shape(n, i) {
                defects.push(Defect::MalformedTuple {
                    gluing: i,
                    field: field.to_string(),
                    reason,
                });
                ok = false;
            }
            if !ok {
                continue;
            }
            let from_mask = tuple_mask(&g.from_vertices);
            let to_mask = tuple_mask(&g.to_vertices);
            if g.from_simplex == g.to_simplex && from_mask == to_mask {
                if g.from_vertices == g.to_vertices {
                    defects.push(Defect::IdentitySelfGluing { gluing: i });
                } else {
                    defects.push(Defect::FacetGluedToItself { gluing: i });
                }
                continue;
            }
            uses.entry((g.from_simplex, from_mask)).or_default().push(i);
            uses.entry((g.to_simplex, to_mask)).or_default().push(i);
        }

        for (&(simplex, mask), gluings) in &uses {
            if gluings.len() > 1 {
                defects.push(Defect::DoubleGlued {
                    facet: facet_ref(simplex, mask),
                    gluings: gluings.clone(),
                });
            }
        }

        let mut free_facets = Vec::new();
        for s in 0..self.simplex_count {
            // facets in order of their sorted vertex tuples
            for omitted in (0..=n).rev() {
                let mask = full & !(1 << omitted);
                if !uses.contains_key(&(s, mask)) {
                    free_facets.push(facet_ref(s, mask));
                }
            }
        }
        if !self.partial {
            for facet in &free_facets {
                defects.push(Defect::Unglued { facet: facet.clone() });
            }
        }

        ValidationReport {
            valid: defects.is_empty(),
            dimension: n,
            simplex_count: self.simplex_count,
            gluing_count: self.gluings.len(),
            partial: self.partial,
            defects,
            warnings,
            free_facets: if self.partial { free_facets } else { Vec::new() },
        }
    }

    /// Validates and builds the per-facet adjacency table used by every
    /// analysis routine.
    pub fn facet_map(&self) -> Result<FacetMap> {
        let report = self.validate();
        if !report.valid {
            return Err(Error::Invalid(report.summary()));
        }
        let n = self.dimension;
        let mut slots = vec![None; self.simplex_count * (n + 1)];
        for (i, g) in self.gluings.iter().enumerate() {
            let ext = extend_gluing(g, n)?;
            let back = ext.map.inverse();
            let back_omitted = ext.map.apply(ext.omitted);
            slots[g.from_simplex * (n + 1) + ext.omitted as usize] = Some(Neighbor {
                simplex: g.to_simplex,
                map: ext.map,
                gluing: i,
            });
            slots[g.to_simplex * (n + 1) + back_omitted as usize] = Some(Neighbor {
                simplex: g.from_simplex,
                map: back,
                gluing: i,
            });
        }
        Ok(FacetMap {
            dimension: n,
            simplex_count: self.simplex_count,
            slots,
        })
    }

    /// Whether both triangulations contain the same facet identifications,
    /// regardless of gluing order or direction.
    pub fn same_identifications(&self, other: &Triangulation) -> bool {
        if self.dimension != other.dimension
            || self.simplex_count != other.simplex_count
            || self.gluings.len() != other.gluings.len()
        {
            return false;
        }
        let mut a: Vec<_> = self.gluings.iter().map(FacetGluing::identification_key).collect();
        let mut b: Vec<_> = other.gluings.iter().map(FacetGluing::identification_key).collect();
        a.sort();
        b.sort();
        a == b
    }
}

pub(crate) fn tuple_mask(tuple: &[u8]) -> u32 {
    tuple.iter().fold(0u32, |m, &l| m | 1 << (l - 1))
}

pub(crate) fn facet_ref(simplex: usize, mask: u32) -> FacetRef {
    FacetRef {
        simplex,
        vertices: mask_labels(mask).into_iter().map(|l| l + 1).collect(),
    }
}

#[derive(Clone, Debug)]
pub struct Neighbor {
    pub simplex: usize,
    /// 0-based vertex map from the current simplex onto `simplex`.
    pub map: Perm,
    /// Index of the gluing in the source triangulation.
    pub gluing: usize,
}

/// Adjacency of a validated triangulation: for each simplex and each facet
/// (named by its 0-based omitted vertex), the simplex across it and the
/// extended vertex map, or `None` for a free facet.
#[derive(Clone, Debug)]
pub struct FacetMap {
    dimension: usize,
    simplex_count: usize,
    slots: Vec<Option<Neighbor>>,
}

impl FacetMap {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn simplex_count(&self) -> usize {
        self.simplex_count
    }

    #[inline]
    pub fn across(&self, simplex: usize, omitted: u8) -> Option<&Neighbor> {
        self.slots[simplex * (self.dimension + 1) + omitted as usize].as_ref()
    }
}

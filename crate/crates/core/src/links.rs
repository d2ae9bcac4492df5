//! Vertex links.
//!
//! The link of a vertex class has one (n-1)-simplex per (simplex, vertex)
//! incidence in the class. The link simplex of vertex `v` in simplex `s`
//! carries the remaining labels of `s`, renumbered `1..=n` in ascending order,
//! and its facet opposite `u` is glued wherever the facet of `s` opposite `u`
//! is.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::faces::{face_classes_with, FaceIncidence};
use crate::triangulation::{FacetGluing, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexLink {
    /// Incidences of the vertex class, in link-simplex order.
    pub incidences: Vec<FaceIncidence>,
    pub link: Triangulation,
}

pub fn vertex_links(t: &Triangulation) -> Result<Vec<VertexLink>> {
    let n = t.dimension();
    if n < 2 {
        return Err(Error::Dimension {
            dimension: n,
            reason: "vertex links need n >= 2",
        });
    }
    let fm = t.facet_map()?;
    let classes = face_classes_with(&fm, 0);

    // (simplex, 0-based vertex) -> (class, index within class)
    let mut place = vec![(0usize, 0usize); t.simplex_count() * (n + 1)];
    for (c, class) in classes.classes.iter().enumerate() {
        for (i, inc) in class.iter().enumerate() {
            place[inc.simplex * (n + 1) + (inc.vertices[0] - 1) as usize] = (c, i);
        }
    }

    // renumber the labels of s other than v (both 1-based) to 1..=n
    let relabel = |v: u8, label: u8| if label < v { label } else { label - 1 };

    let mut gluings: Vec<Vec<FacetGluing>> = vec![Vec::new(); classes.count()];
    for g in t.gluings() {
        for (k, &v) in g.from_vertices.iter().enumerate() {
            let w = g.to_vertices[k];
            let (class, from_index) = place[g.from_simplex * (n + 1) + (v - 1) as usize];
            let (_, to_index) = place[g.to_simplex * (n + 1) + (w - 1) as usize];
            let from: Vec<u8> = g
                .from_vertices
                .iter()
                .filter(|&&x| x != v)
                .map(|&x| relabel(v, x))
                .collect();
            let to: Vec<u8> = g
                .to_vertices
                .iter()
                .filter(|&&x| x != w)
                .map(|&x| relabel(w, x))
                .collect();
            gluings[class].push(FacetGluing::new(from_index, from, to_index, to));
        }
    }

    Ok(classes
        .classes
        .into_iter()
        .zip(gluings)
        .map(|(incidences, gluings)| {
            let size = incidences.len();
            let partial = gluings.len() * 2 != size * n;
            VertexLink {
                incidences,
                link: Triangulation::new(n - 1, size, gluings, partial),
            }
        })
        .collect())
}

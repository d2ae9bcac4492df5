//! Facet-pairing triangulations of simplicial pseudomanifolds, the
//! 4-dimensional construction built from cones over two cusped hyperbolic
//! 3-manifolds, and cusp-shape obstructions to bounding geometrically.

pub mod cli;
pub mod construct;
pub mod constructions;
pub mod cusp;
pub mod cycles;
pub mod error;
pub mod faces;
pub mod format;
pub mod iso;
pub mod links;
pub mod orient;
pub mod perm;
pub mod triangulation;

pub use error::{Error, Result};
pub use triangulation::{FacetGluing, Triangulation};

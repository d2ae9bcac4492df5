//! Cusp shapes of hyperbolic 3-manifolds and obstructions to bounding
//! geometrically.

pub mod modulus;
pub mod obstruction;
pub mod parse;
pub mod quadratic;

pub use modulus::{
    admits_involution, classify_shape, reduce_modulus, shape_report, unoriented_canonical, ExactModulus,
    FloatModulus, Generator, Modulus, Reduction, ShapeClass, ShapeReport, Word, DEFAULT_EPSILON,
};
pub use obstruction::{
    euler_parity_obstruction, pairing_obstruction_3d, pairing_obstruction_general, trace_field_obstruction,
    twist_knot_verdict, CuspDescriptor, Rule, TwistKnotVerdict, Verdict, VerdictTag,
};
pub use parse::parse_modulus;
pub use quadratic::QuadraticReal;

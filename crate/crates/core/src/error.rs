use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed gluing #{gluing}: {field}: {reason}")]
    MalformedGluing {
        gluing: usize,
        field: &'static str,
        reason: String,
    },

    #[error("invalid triangulation: {0}")]
    Invalid(String),

    #[error("triangulation is partial; {0} requires every facet to be glued")]
    Partial(&'static str),

    #[error("face dimension {k} out of range 0..={n}")]
    FaceDimension { k: usize, n: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension {dimension} unsupported: {reason}")]
    Dimension {
        dimension: usize,
        reason: &'static str,
    },

    #[error("assembly: {0}")]
    Assembly(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown builtin {name:?} (valid names: {valid})")]
    UnknownBuiltin { name: String, valid: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("bad modulus {input:?}: {reason}")]
    Modulus { input: String, reason: String },

    #[error("quadratic fields differ: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(u64, u64),

    #[error("boundary-ambiguous modulus {modulus}: {detail}")]
    Ambiguous { modulus: String, detail: String },

    #[error("inconsistent cusp descriptors: {0}")]
    InconsistentCusps(String),

    #[error("{0}")]
    Excluded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised by the library. Every variant maps to a distinct CLI message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown graph `{0}` (expected one of D4t, E6t, E7t, E8t)")]
    UnknownGraph(String),

    #[error("malformed rational `{0}` (expected an integer or p/q)")]
    MalformedRational(String),

    #[error("malformed integer `{0}`")]
    MalformedInteger(String),

    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("vertex {0} does not exist on this graph")]
    VertexOutOfRange(usize),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("nonpositive multiplicity {value} on arm {arm}")]
    NonpositiveMultiplicity { arm: usize, value: i64 },

    #[error("{0} is not a root (Tits form value {1})")]
    NotARoot(String, i64),

    #[error("k = {k} is below the threshold k_t = {threshold}")]
    BelowThreshold { k: usize, threshold: usize },

    #[error("the Horn conditions only apply on the hyperplane gamma = omega(chi)")]
    OffHyperplane,

    #[error("invalid symmetry `{0}`")]
    InvalidSymmetry(String),

    #[error("dimension/multiplicity mismatch: {0}")]
    MultiplicityMismatch(String),

    #[error("malformed table data: {0}")]
    Table(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

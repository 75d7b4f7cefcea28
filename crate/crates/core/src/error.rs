//! Error type shared across the library.

use thiserror::Error;

/// Everything that can go wrong when building or combining exact-arithmetic
/// objects. Math *results* (an axiom failing, a theorem conclusion being
/// false) are never errors — they are reported as data; errors are reserved
/// for ill-formed inputs and violated preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: operands live over different fields")]
    FieldMismatch,

    #[error("arity must be at least 2, got {0}")]
    ArityTooSmall(usize),

    #[error("twist maps do not commute")]
    NonCommutingTwists,

    #[error("linear form is not a twisted trace form (pass override to force the construction)")]
    InvalidTrace,

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("not a subalgebra: {0}")]
    NotASubalgebra(String),

    #[error("subspaces are not complementary: {0}")]
    NotComplementary(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

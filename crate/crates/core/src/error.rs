use thiserror::Error;

/// Errors shared by every layer of the crate.
///
/// Exactness is non-negotiable in this crate, so anything that would force
/// an approximation (or silently produce one) is reported as an error
/// instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    #[error("vectors are collinear: every 2x2 minor vanishes")]
    CollinearInput,

    #[error("zero vector is not allowed here: {0}")]
    ZeroVector(String),

    #[error("division by zero scalar")]
    DivisionByZero,

    #[error("invalid scalar literal {literal:?}: {reason}")]
    BadScalar { literal: String, reason: String },

    #[error("invalid highest weight: {0}")]
    InvalidWeight(String),

    #[error("representation dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: String, cap: usize },

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("unsupported schema version {found}, this build reads version {expected}")]
    SchemaVersion { expected: u32, found: u32 },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("quadratic irrational is degenerate: {0}")]
    DegenerateIrrational(String),

    #[error("search did not terminate within {0} steps")]
    SearchBudgetExhausted(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

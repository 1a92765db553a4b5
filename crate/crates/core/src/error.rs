use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("inconsistent linear system")]
    Inconsistent,

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid ring extension: {0}")]
    InvalidExtension(String),

    #[error("quotient is infinite-dimensional: new paths survive at length {0}")]
    InfiniteDimensional(usize),

    #[error("not split over field: {0}")]
    NotSplitOverField(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Two routes that must agree disagreed. Always a bug.
    #[error("coherence violation: {0}")]
    Coherence(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

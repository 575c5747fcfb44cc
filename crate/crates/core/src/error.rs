use thiserror::Error;

use crate::multi_index::MultiIndex;

/// Errors raised by the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("duplicate index {0}")]
    DuplicateIndex(MultiIndex),

    #[error("point has a zero component at position {0}")]
    ZeroComponent(usize),

    #[error("point is not on the torus: |z_{index}| = {modulus}")]
    OffTorus { index: usize, modulus: f64 },

    #[error("multi-index {0} has a negative entry")]
    NegativeIndex(MultiIndex),

    #[error("grid of {requested} points exceeds the cap of {cap}")]
    GridCap { requested: u128, cap: u64 },

    #[error("degenerate profile: {0}")]
    DegenerateProfile(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

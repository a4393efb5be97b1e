use thiserror::Error;

/// Errors raised by the exact algebra, group, train and harness layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch: {0}")]
    Field(String),
    #[error("matrix is singular")]
    Singular,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("not a group member: {0}")]
    NotMember(String),
    #[error("homomorphism tag does not fit: {0}")]
    TagMismatch(String),
    #[error("pair mismatch: {0}")]
    PairMismatch(String),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("pair is not pure")]
    NotPure,
    #[error("level {alpha:?} is not below {beta:?}")]
    LevelOrder { alpha: Vec<usize>, beta: Vec<usize> },
    #[error("support {support} exceeds truncation {n}; need n >= {min_n}")]
    Truncation { support: usize, n: usize, min_n: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

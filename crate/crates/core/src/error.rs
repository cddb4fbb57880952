use thiserror::Error;

use crate::multiindex::MultiIndex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("weight {beta} has total {total}, expected {expected}")]
    WeightMismatch {
        beta: MultiIndex,
        total: u32,
        expected: u32,
    },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("no value assigned to s_{0}")]
    MissingAssignment(MultiIndex),

    #[error("matrix is not skew-symmetric or has odd size ({0}x{0})")]
    NotSkew(usize),

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("time budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid index pair ({0},{1})")]
    InvalidIndexPair(usize, usize),
    #[error("polynomial is not homogeneous (degrees {0:?})")]
    NotHomogeneous(Vec<u32>),
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("field is not a weight vector")]
    MixedWeight,
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

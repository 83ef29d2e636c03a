use thiserror::Error;

use crate::qseries::IndexPair;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("index ({i}, {j}) is not realized by a totally positive element")]
    InvalidIndex { i: i64, j: i64 },

    #[error("element is not totally positive: {0}")]
    NotTotallyPositive(String),

    #[error("non-integral value where an integer was required: {0}")]
    NonIntegral(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("normalization of generator {0} is singular")]
    SingularNormalization(&'static str),

    #[error("precision {prec} is insufficient: {reason}")]
    InsufficientPrecision { prec: i64, reason: String },

    #[error("extremal form of weight {weight} is not unique: {dim}-dimensional family at valuation {nu:?}")]
    NonUnique { weight: u32, dim: usize, nu: IndexPair },

    #[error("precondition failed: {}", .0.join("; "))]
    Precondition(Vec<String>),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

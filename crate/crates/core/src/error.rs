use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible margins: degree {left} vs degree {right}")]
    DegreeMismatch { left: i64, right: i64 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("(n, r) mismatch: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),

    #[error("not a composition: {0:?}")]
    NotComposition(Vec<i64>),

    #[error("not a partition (weakly decreasing, nonnegative): {0:?}")]
    NotPartition(Vec<i64>),

    #[error("multi-index entry {entry} out of range 1..={n}")]
    IndexOutOfRange { entry: usize, n: usize },

    #[error("matrix is not in Theta(n,r): {0}")]
    NotNonnegative(String),

    #[error("weight must have at least one entry")]
    EmptyWeight,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource guard: {what} = {requested} exceeds bound {bound}")]
    ResourceLimit {
        what: &'static str,
        requested: u128,
        bound: u128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

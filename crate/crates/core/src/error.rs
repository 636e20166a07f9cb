use thiserror::Error;

/// Errors raised by the construction and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MubError {
    #[error("invalid dimension {dimension}: {reason}")]
    InvalidDimension { dimension: i64, reason: &'static str },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("phase modulus {phase} does not match root table modulus {table}")]
    ModulusMismatch { phase: u64, table: u64 },

    #[error("negative power of a matrix that is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("{value} is not coprime with {dimension}")]
    NotCoprime { value: i64, dimension: i64 },

    #[error("reciprocity requires a != 0 and a*d + b even (a={a}, b={b}, d={d})")]
    ReciprocityPrecondition { a: i64, b: i64, d: i64 },

    #[error("search space {order}^{dimension} exceeds the supported bound (d <= 6, m <= 12)")]
    SearchTooLarge { dimension: usize, order: usize },

    #[error("dense materialization of dimension {dimension} exceeds cap {cap}")]
    DenseCapExceeded { dimension: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, MubError>;

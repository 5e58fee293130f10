use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An operation that needs `m <= n` was handed `m > n`.
    #[error("index m = {m} exceeds n = {n}")]
    IndexOrder { m: usize, n: usize },

    #[error("series truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("coefficient {n} lies beyond truncation order {order}")]
    BeyondOrder { n: usize, order: usize },

    #[error("series has zero constant term and is not invertible")]
    NonInvertible,

    #[error("m = {m} exceeds the configured cap {cap}")]
    CapExceeded { m: usize, cap: usize },

    #[error("zero polynomial")]
    ZeroPolynomial,

    /// A formula evaluated outside the range where it is stated.
    #[error("outside formula domain: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

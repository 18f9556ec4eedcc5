use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation at position {position}: {reason}")]
    InvalidPermutation { position: usize, reason: String },

    #[error("cannot parse permutation: {0}")]
    Parse(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("operation requires an unsigned permutation")]
    SignedInput,

    #[error("{what} with n = {n} exceeds the guard of {limit}; force it to proceed")]
    GuardExceeded { what: &'static str, n: usize, limit: usize },

    #[error("invalid perfect matching: {0}")]
    InvalidMatching(String),

    #[error("configuration is not a breakpoint graph: its complement has {cycles} cycles")]
    NotHamiltonian { cycles: usize },

    #[error("({a}, {b}) is not a hook partition of {total}")]
    InvalidPartition { a: usize, b: usize, total: usize },

    #[error("{0}")]
    OutOfDomain(String),

    #[error("table total {actual} does not match expected {expected}")]
    TotalMismatch { expected: String, actual: String },

    #[error("unknown metric or generator set `{0}`")]
    UnknownMetric(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

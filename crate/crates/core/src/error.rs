use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a positive integer, got zero")]
    ZeroInput,
    #[error("input list is empty")]
    EmptyInput,
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("index set is malformed: {0}")]
    MalformedIndexSet(String),
    #[error("the GCD matrix is not totally nonnegative")]
    NotTotallyNonnegative,
    #[error("entries of X are not distinct, so S(X) is singular")]
    DuplicateEntries,
    #[error("exponent profile is invalid: {0}")]
    InvalidProfile(String),
    #[error("value {value} exceeds the declared domain bound {bound} of `{function}`")]
    DomainOverflow {
        function: String,
        value: BigUint,
        bound: u64,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

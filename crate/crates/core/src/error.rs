use thiserror::Error;

/// Errors raised by the arithmetic-function library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Zero is not an element of the multiplicative monoid of positive integers.
    #[error("{0} must be a positive integer, got 0")]
    ZeroArgument(&'static str),

    /// Two values both carrying formal log parts were multiplied.
    #[error("product of two log-valued quantities is undefined")]
    LogProductUndefined,

    /// A value with a log part was used where a rational is required.
    #[error("expected a rational value, got {0}")]
    NotRational(String),

    #[error("function is not invertible: f(1) = 0")]
    NotInvertible,

    #[error("unknown builtin function `{0}`")]
    UnknownBuiltin(String),

    #[error("pair sums of different kinds cannot be combined")]
    KindMismatch,

    #[error("Bell series or matrices over different primes: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("matrices of different dimension: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("{0}")]
    InvalidParameter(String),

    /// `specially_multiplicative` requires its weight function to be completely multiplicative.
    #[error("weight function `{name}` is not completely multiplicative (witness {n}, {m})")]
    NotCompletelyMultiplicative { name: String, n: u64, m: u64 },

    #[error("Toeplitz embedding requires f(1) = 1, got {0}")]
    NotNormalized(String),

    #[error("cannot parse value `{0}`")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

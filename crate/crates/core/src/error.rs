use thiserror::Error;

/// Errors raised by evaluation, enumeration and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} is outside the explicit sequence range [{first}, {last}]")]
    IndexOutOfRange { index: i64, first: i64, last: i64 },

    #[error("index 0 is not allowed for a negative exponent (division by zero)")]
    ZeroIndex,

    #[error("explicit sequence has no values")]
    EmptySequence,

    #[error("lower bound q must be non-negative, got {0}")]
    NegativeLowerBound(i64),

    #[error("{what} = {value} exceeds the limit {max}")]
    TooLarge {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("cutoff {cutoff} is outside [0, {m}]")]
    CutoffOutOfRange { cutoff: usize, m: usize },

    #[error("expected {expected} power sums, got {got}")]
    PowerSumCount { expected: usize, got: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

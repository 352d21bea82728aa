use thiserror::Error;

use crate::ring::RingSpec;

/// Failures of coefficient arithmetic and ring parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported maximum")]
    ModulusTooLarge(u64),
    #[error("unknown ring spec {0:?}; expected Z, Q or F<prime>")]
    BadRingSpec(String),
    #[error("malformed coefficient {0:?}")]
    BadCoeff(String),
    #[error("{0} is not invertible")]
    DivisionByNonUnit(String),
    #[error("operands live in different rings ({0} and {1})")]
    MixedRings(RingSpec, RingSpec),
    #[error("every positive integer is invertible in Q")]
    NoNonUnitInteger,
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("operands have mismatched variable count or ring: {0}")]
    MixedContext(String),
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("{0} is not invertible in the coefficient ring")]
    NonInvertible(u64),
    #[error("division by the zero fraction")]
    DivisionByZeroFraction,
    #[error("denominator vanishes after substituting power sums in {0} variables")]
    DenominatorVanishes(usize),
    #[error("no non-zero pivot in column {0} of the leading block")]
    SingularBlock(usize),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("e_{0} cannot be determined from the given traces")]
    Indeterminate(usize),
    #[error("need {needed} traces, got {got}")]
    InsufficientTraces { needed: usize, got: usize },
    #[error("no characteristic polynomial of degree {0} reproduces the given traces")]
    InconsistentTraces(usize),
    #[error("{0} is not a field")]
    NotAField(RingSpec),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid JSON document: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

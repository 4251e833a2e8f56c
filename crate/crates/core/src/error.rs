use thiserror::Error;

use crate::numeric::Rational;

/// Errors raised by the exact-real library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("value {0} is outside [0, 1]")]
    OutOfRange(Rational),

    #[error("coefficient {0} is negative")]
    NegativeCoefficient(Rational),

    #[error("coefficients sum to {0}, which exceeds 1")]
    CoefficientSumTooLarge(Rational),

    #[error("engine state violates sign conditions: {0}")]
    SignViolation(String),

    #[error("precondition failed: {0}")]
    Precondition(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

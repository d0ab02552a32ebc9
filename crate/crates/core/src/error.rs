use num_bigint::BigUint;
use thiserror::Error;

use crate::exactnum::Rational;

/// Errors raised by the exact-arithmetic and quadratic-form layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not allowed here")]
    ZeroArgument,
    #[error("{0} is not a prime")]
    NotPrime(BigUint),
    #[error("the Legendre symbol needs an odd prime modulus")]
    EvenModulus,
    #[error("factoring {0} exceeded the effort budget")]
    FactorBudgetExhausted(BigUint),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Gram matrix must be square and non-empty")]
    NotSquare,
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("Gram matrix is singular")]
    Singular,
    #[error("form is not positive definite: leading principal minor {index} equals {value}")]
    NotPositiveDefinite { index: usize, value: Rational },
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

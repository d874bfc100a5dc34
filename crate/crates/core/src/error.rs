use thiserror::Error;

use crate::scalar::HalfInt;

/// Errors raised by the exact operational-calculus routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Γ evaluated at a non-positive integer.
    #[error("gamma function pole at {0}")]
    Pole(HalfInt),

    /// A term handed to the integral transform has a `u` exponent in ℤ≤0.
    #[error("term `{term}` is outside the transform domain: {var}^{exponent}")]
    Domain {
        term: String,
        var: String,
        exponent: HalfInt,
    },

    /// The inverse of a diagonal operator met a kernel degree carrying a
    /// nonzero monomial while completion was `ErrorOnKernel`.
    #[error("diagonal operator kernel hit at degree {degree}")]
    KernelHit { degree: i64 },

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("cannot expand exponential: {0}")]
    Expansion(String),

    #[error("index out of range: {0}")]
    Index(String),

    /// Two scalars with different powers of √π were added.
    #[error("cannot add multiples of pi^({0}/2) and pi^({1}/2)")]
    MixedPiPowers(i32, i32),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

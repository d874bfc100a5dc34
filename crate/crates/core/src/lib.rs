//! Exact operational calculus for Sobolev-Jacobi and two-variable Hermite
//! polynomials.
//!
//! Everything is computed in exact arithmetic over rationals times integer
//! powers of √π. Infinite series are truncated formal objects.

pub mod connect;
pub mod error;
pub mod families;
pub mod hyper;
pub mod lacunary;
pub mod opcalc;
pub mod par;
pub mod poly;
pub mod scalar;
pub mod umbral;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{CoeffSeries, Poly};
pub use scalar::{ExactScalar, HalfInt, Rational};

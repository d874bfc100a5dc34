//! Euler-operator calculus.
//!
//! A [`DiagonalOp`] is a function of the Euler operator `D = x∂_x` (or of a
//! sum of Euler operators). It multiplies each monomial by a scalar that only
//! depends on the monomial's total degree in the chosen variables.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{int, rat, ExactScalar, Rational};

/// What the inverse of a diagonal operator does on its kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Completion {
    /// Replace the zero eigenvalue by 1.
    #[default]
    IdentityOnKernel,
    /// Refuse to invert on a kernel degree carrying a nonzero monomial.
    ErrorOnKernel,
}

type EvalFn = Arc<dyn Fn(i64) -> ExactScalar + Send + Sync>;

#[derive(Clone)]
pub struct DiagonalOp {
    eval: EvalFn,
    kernel: BTreeSet<i64>,
    completion: Completion,
}

impl fmt::Debug for DiagonalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiagonalOp")
            .field("kernel", &self.kernel)
            .field("completion", &self.completion)
            .finish_non_exhaustive()
    }
}

impl DiagonalOp {
    /// `d ↦ scale · ∏ (d + shift_i)`. The kernel is read off the factors.
    pub fn linear_factors(scale: ExactScalar, shifts: &[Rational]) -> Self {
        let kernel = if scale.is_zero() {
            BTreeSet::new()
        } else {
            shifts
                .iter()
                .filter(|s| s.is_integer())
                .map(|s| -i64::try_from(s.to_integer()).unwrap())
                .collect()
        };
        let shifts = shifts.to_vec();
        let eval = move |d: i64| {
            let prod = shifts
                .iter()
                .fold(Rational::one(), |acc, s| acc * (int(d) + s));
            scale.mul_rat(&prod)
        };
        DiagonalOp {
            eval: Arc::new(eval),
            kernel,
            completion: Completion::default(),
        }
    }

    /// An arbitrary eigenvalue rule with an explicitly declared kernel.
    pub fn from_fn(
        f: impl Fn(i64) -> ExactScalar + Send + Sync + 'static,
        kernel: BTreeSet<i64>,
    ) -> Self {
        DiagonalOp {
            eval: Arc::new(f),
            kernel,
            completion: Completion::default(),
        }
    }

    pub fn identity() -> Self {
        DiagonalOp::from_fn(|_| ExactScalar::one(), BTreeSet::new())
    }

    pub fn with_completion(mut self, completion: Completion) -> Self {
        self.completion = completion;
        self
    }

    pub fn completion(&self) -> Completion {
        self.completion
    }

    pub fn eval(&self, d: i64) -> ExactScalar {
        (self.eval)(d)
    }

    pub fn kernel(&self) -> &BTreeSet<i64> {
        &self.kernel
    }

    /// Scales each monomial by `eval(total degree in vars)`.
    pub fn apply(&self, p: &Poly, vars: &[&str]) -> Poly {
        p.map_coeffs(|e, c| c * &self.eval(p.degree_in(e, vars) as i64))
    }

    /// Divides each monomial by `eval(total degree)`, honouring the completion policy.
    pub fn apply_inverse(&self, p: &Poly, vars: &[&str]) -> Result<Poly> {
        let mut hit = None;
        let out = p.map_coeffs(|e, c| {
            let d = p.degree_in(e, vars) as i64;
            if self.kernel.contains(&d) {
                if self.completion == Completion::ErrorOnKernel {
                    hit = Some(d);
                }
                return c.clone();
            }
            let ev = self.eval(d);
            match ev.recip() {
                Some(inv) => c * &inv,
                None => {
                    hit.get_or_insert(d);
                    c.clone()
                }
            }
        });
        match hit {
            Some(degree) => Err(Error::KernelHit { degree }),
            None => Ok(out),
        }
    }

    /// `d ↦ eval(d + p − q)`, the operator satisfying
    /// `f(D) x^p ∂^q = x^p ∂^q f(D + p − q)`.
    pub fn conjugate_shift(&self, p: u32, q: u32) -> DiagonalOp {
        let delta = p as i64 - q as i64;
        let inner = self.eval.clone();
        DiagonalOp {
            eval: Arc::new(move |d| inner(d + delta)),
            kernel: self.kernel.iter().map(|k| k - delta).collect(),
            completion: self.completion,
        }
    }
}

pub fn apply_diagonal(f: &DiagonalOp, p: &Poly, vars: &[&str]) -> Poly {
    f.apply(p, vars)
}

pub fn apply_inverse_diagonal(f: &DiagonalOp, p: &Poly, vars: &[&str]) -> Result<Poly> {
    f.apply_inverse(p, vars)
}

/// `x^p ∂_x^q` applied to `poly`.
pub fn xp_dq(poly: &Poly, var: &str, p: u32, q: u32) -> Poly {
    poly.nth_derivative(var, q).mul_var(var, p)
}

/// `(D − n)(D + n + α + β + 1)`, the diagonal part of the shifted Jacobi operator.
pub fn jacobi_diagonal(n: u32, alpha: &Rational, beta: &Rational) -> DiagonalOp {
    let n = int(n as i64);
    DiagonalOp::linear_factors(
        ExactScalar::one(),
        &[-n.clone(), &n + alpha + beta + int(1)],
    )
}

/// `(1 − x²)p'' + (β − α − (α + β + 2)x)p'`.
pub fn jacobi_operator(p: &Poly, alpha: &Rational, beta: &Rational) -> Poly {
    let x = Poly::var("x");
    let one_minus_x2 = &Poly::one() - &x.pow(2);
    let drift = &Poly::from_rational(beta - alpha) - &x.scale_rat(&(alpha + beta + int(2)));
    &(&one_minus_x2 * &p.nth_derivative("x", 2)) + &(&drift * &p.derivative("x"))
}

/// The monic degree-n eigenpolynomial of the Jacobi operator built as the
/// terminating resolvent series `Σ_m [G⁻¹(∂² + (β−α)∂)]^m x^n`,
/// `G = (D − n)(D + n + α + β + 1)`.
pub fn gp_series(n: u32, alpha: &Rational, beta: &Rational) -> Result<Poly> {
    gp_series_with(n, alpha, beta, Completion::IdentityOnKernel)
}

pub fn gp_series_with(
    n: u32,
    alpha: &Rational,
    beta: &Rational,
    completion: Completion,
) -> Result<Poly> {
    let g = jacobi_diagonal(n, alpha, beta).with_completion(completion);
    let drift = beta - alpha;
    let mut term = Poly::var("x").pow(n);
    let mut sum = term.clone();
    for _ in 0..=n + 1 {
        let lowered = &term.nth_derivative("x", 2) + &term.derivative("x").scale_rat(&drift);
        term = g.apply_inverse(&lowered, &["x"])?;
        if term.is_zero() {
            return Ok(sum);
        }
        sum = &sum + &term;
    }
    Err(Error::Internal(format!(
        "resolvent series for n = {n} did not terminate"
    )))
}

/// `e^{−(1/2)(D + n − 1)⁻¹ ∂²} x^n`.
pub fn exp_resolvent_sj(n: u32) -> Result<Poly> {
    exp_resolvent_sj_with(n, Completion::IdentityOnKernel)
}

pub fn exp_resolvent_sj_with(n: u32, completion: Completion) -> Result<Poly> {
    // −(1/2)(d + n − 1)^{-1} = 1 / (−2(d + n − 1))
    let denom = DiagonalOp::linear_factors(ExactScalar::from_int(-2), &[int(n as i64 - 1)])
        .with_completion(completion);
    exp_series(Poly::var("x").pow(n), n, |p| {
        denom.apply_inverse(&p.nth_derivative("x", 2), &["x"])
    })
}

/// `Σ_k A^k p / k!` for a nilpotent-on-p operator `A`, with at most `cap` applications.
fn exp_series(p: Poly, cap: u32, op: impl Fn(&Poly) -> Result<Poly>) -> Result<Poly> {
    let mut term = p.clone();
    let mut sum = p;
    for k in 1..=cap + 1 {
        term = op(&term)?.scale_rat(&rat(1, k as i64));
        if term.is_zero() {
            return Ok(sum);
        }
        sum = &sum + &term;
    }
    Err(Error::Internal(
        "operator exponential did not terminate".into(),
    ))
}

/// `b_p = −(1/2)(D_x + D_y + p − 1)⁻¹`, returned as the operator to invert.
pub fn b_op_denominator(p: i64) -> DiagonalOp {
    DiagonalOp::linear_factors(ExactScalar::from_int(-2), &[int(p - 1)])
}

/// `b_p` applied to a polynomial in x, y.
pub fn apply_b(p: i64, poly: &Poly) -> Result<Poly> {
    b_op_denominator(p).apply_inverse(poly, &["x", "y"])
}

/// `P_n(x, y) = e^{b_0 ∂_x²} (xy)^n`.
pub fn exp_b_bivariate(n: u32) -> Result<Poly> {
    let start = Poly::monomial(ExactScalar::one(), &[("x", n), ("y", n)]);
    exp_series(start, n, |p| apply_b(0, &p.nth_derivative("x", 2)))
}

/// `H_n(x, z) = e^{z ∂_x²} x^n`.
pub fn hermite_exp(n: u32) -> Poly {
    let z = Poly::var("z");
    exp_series(Poly::var("x").pow(n), n, |p| {
        Ok(&z * &p.nth_derivative("x", 2))
    })
    .expect("pure derivative series")
}

pub fn is_monic(p: &Poly, var: &str) -> bool {
    p.leading_coeff(var)
        .and_then(|c| c.as_constant())
        .is_some_and(|c| c.is_one())
}

/// Eigenvalue `−n(n + α + β + 1)` of the Jacobi operator.
pub fn jacobi_eigenvalue(n: u32, alpha: &Rational, beta: &Rational) -> Rational {
    let n = int(n as i64);
    -(&n * (&n + alpha + beta + int(1)))
}

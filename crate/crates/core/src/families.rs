//! Closed-form polynomial families and their exponential generating functions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hyper::tricomi_coeff;
use crate::opcalc;
use crate::poly::{CoeffSeries, Poly};
use crate::scalar::{
    binomial, factorial, gamma_ratio, int, rat, recip_gamma, ExactScalar, HalfInt, Rational,
};
use crate::umbral::{lift_poly, GenMonomial};

/// A polynomial family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    JacobiClassical {
        alpha: Rational,
        beta: Rational,
    },
    /// α = β = −1; `gamma` only enters degree 1.
    SjMm {
        gamma: Rational,
    },
    /// α = −1, β > −1.
    SjBeta {
        beta: Rational,
    },
    /// H_n(x, z).
    Hermite2,
}

impl Family {
    pub fn sj() -> Self {
        Family::SjMm {
            gamma: Rational::zero(),
        }
    }

    pub fn poly(&self, n: u32) -> Result<Poly> {
        match self {
            Family::JacobiClassical { alpha, beta } => jacobi_classical(n, alpha, beta),
            Family::SjMm { gamma } => Ok(sj_closed_mm(n, gamma)),
            Family::SjBeta { beta } => sj_closed_beta(n, beta),
            Family::Hermite2 => Ok(hermite_closed(n)),
        }
    }

    /// Eigenvalue of the Jacobi operator, when the family has one.
    pub fn eigenvalue(&self, n: u32) -> Option<Rational> {
        let m1 = int(-1);
        match self {
            Family::JacobiClassical { alpha, beta } => {
                Some(opcalc::jacobi_eigenvalue(n, alpha, beta))
            }
            Family::SjMm { .. } => Some(opcalc::jacobi_eigenvalue(n, &m1, &m1)),
            Family::SjBeta { beta } => Some(opcalc::jacobi_eigenvalue(n, &m1, beta)),
            Family::Hermite2 => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::JacobiClassical { alpha, beta } => {
                write!(f, "jacobi(alpha={alpha}, beta={beta})")
            }
            Family::SjMm { gamma } => write!(f, "sj(alpha=-1, beta=-1, gamma={gamma})"),
            Family::SjBeta { beta } => write!(f, "sj(alpha=-1, beta={beta})"),
            Family::Hermite2 => write!(f, "hermite"),
        }
    }
}

fn x() -> Poly {
    Poly::var("x")
}

fn x_minus_1() -> Poly {
    &x() - &Poly::one()
}

fn x_plus_1() -> Poly {
    &x() + &Poly::one()
}

/// Classical Jacobi polynomial `P_n^{(α,β)}` from its binomial sum.
pub fn jacobi_classical(n: u32, alpha: &Rational, beta: &Rational) -> Result<Poly> {
    if *alpha <= int(-1) || *beta <= int(-1) {
        return Err(Error::Param(format!(
            "classical Jacobi needs alpha, beta > -1 (got {alpha}, {beta})"
        )));
    }
    let nn = int(n as i64);
    let lo = x_minus_1().scale_rat(&rat(1, 2));
    let hi = x_plus_1().scale_rat(&rat(1, 2));
    let mut out = Poly::zero();
    for l in 0..=n {
        let c = binomial(&(&nn + alpha), l as u64) * binomial(&(&nn + beta), (n - l) as u64);
        if c.is_zero() {
            continue;
        }
        out = &out + &(&lo.pow(n - l) * &hi.pow(l)).scale_rat(&c);
    }
    Ok(out)
}

/// Monic SJ polynomial at α = β = −1 from the binomial closed form.
pub fn sj_closed_mm(n: u32, gamma: &Rational) -> Poly {
    match n {
        0 => Poly::one(),
        1 => &x() + &Poly::from_rational(gamma.clone()),
        _ => {
            let m = int(n as i64 - 1);
            let mut out = Poly::zero();
            for k in 1..n {
                let c = binomial(&m, k as u64) * binomial(&m, (n - k) as u64);
                out = &out + &(&x_minus_1().pow(n - k) * &x_plus_1().pow(k)).scale_rat(&c);
            }
            out.scale_rat(&binomial(&int(2 * n as i64 - 2), n as u64).recip())
        }
    }
}

/// Monic SJ polynomial at α = −1, β > −1.
///
/// The sum over k uses the vanishing convention for `binom(n−1, k)` at k ≥ n.
pub fn sj_closed_beta(n: u32, beta: &Rational) -> Result<Poly> {
    if *beta <= int(-1) {
        return Err(Error::Param(format!("beta must exceed -1 (got {beta})")));
    }
    match n {
        0 => Ok(Poly::one()),
        1 => Ok(x_minus_1()),
        _ => Ok(sj_beta_sum(n, beta)),
    }
}

/// The n ≥ 2 closed form evaluated at any n ≥ 1.
pub fn sj_beta_sum(n: u32, beta: &Rational) -> Poly {
    let nn = int(n as i64);
    let mut out = Poly::zero();
    for k in 0..n {
        let c = binomial(&int(n as i64 - 1), k as u64) * binomial(&(&nn + beta), (n - k) as u64);
        if c.is_zero() {
            continue;
        }
        out = &out + &(&x_minus_1().pow(n - k) * &x_plus_1().pow(k)).scale_rat(&c);
    }
    out.scale_rat(&binomial(&(int(2 * n as i64 - 1) + beta), n as u64).recip())
}

/// `H_n(x, z) = n! Σ_m x^{n−2m} z^m / (m!(n−2m)!)`.
pub fn hermite_closed(n: u32) -> Poly {
    let mut out = Poly::zero();
    for m in 0..=n / 2 {
        let c = matching_coeff(n, m);
        out = &out + &Poly::monomial(ExactScalar::from(c), &[("x", n - 2 * m), ("z", m)]);
    }
    out
}

/// `n!/((n−2k)! k!)` for `2k ≤ n`, zero otherwise.
pub fn matching_coeff(n: u32, k: u32) -> Rational {
    if 2 * k > n {
        return Rational::zero();
    }
    let (n, k) = (n as u64, k as u64);
    Rational::new(factorial(n), factorial(n - 2 * k) * factorial(k))
}

/// `Î((uv)^{n−1/2} H_n(x, −1/(4u)))`.
pub fn sj_umbral(n: u32) -> Result<Poly> {
    let h = hermite_closed(n);
    let z_image =
        GenMonomial::scalar(ExactScalar::from(rat(-1, 4))).u("u", HalfInt::from_twice(-2));
    let lifted = lift_poly(&h, &[("z", z_image)])?;
    let e = HalfInt::from_twice(2 * n as i64 - 1);
    let prefix = GenMonomial::one().u("u", e).v("v", e);
    lifted.mul_monomial(&prefix)?.itransform_poly()
}

/// Coefficient of `λ^N` in the bivariate SJ generating function `G(λ; x, y)`,
/// assembled from the double sum over `n + 2m = N`.
pub fn sj_egf_coeff_xy(big_n: u32) -> Result<Poly> {
    let mut out = Poly::zero();
    for m in 0..=big_n / 2 {
        let n = big_n - 2 * m;
        let a = HalfInt::from_twice(2 * (m + n) as i64 - 1);
        let b = HalfInt::from_twice(2 * (2 * m + n) as i64 - 1);
        let ratio = gamma_ratio(a, b)?;
        let c = ratio.mul_rat(
            &(Rational::new(BigInt::one(), factorial(n as u64) * factorial(m as u64))
                * num_traits::Pow::pow(&rat(-1, 4), m)),
        );
        out = out.try_add(&Poly::monomial(c, &[("x", n), ("y", n + 2 * m)]))?;
    }
    Ok(out)
}

/// Coefficient of `λ^N` in `G(λ; x, 1)`.
pub fn sj_egf_coeff(big_n: u32) -> Result<Poly> {
    Ok(sj_egf_coeff_xy(big_n)?.eval("y", &int(1)))
}

/// `G(λ; x, y)` truncated at `λ^order`.
pub fn sj_egf(order: u32) -> Result<CoeffSeries> {
    Ok(CoeffSeries::new(
        (0..=order).map(sj_egf_coeff_xy).collect::<Result<_>>()?,
    ))
}

/// Hermite EGF `e^{λx + λ²z}` truncated at `λ^order`.
pub fn hermite_egf(order: u32) -> CoeffSeries {
    let mut exponent = CoeffSeries::zero(order as usize);
    if order >= 1 {
        exponent = exponent.add(&CoeffSeries::monomial(x(), 1, order as usize));
    }
    if order >= 2 {
        exponent = exponent.add(&CoeffSeries::monomial(Poly::var("z"), 2, order as usize));
    }
    exponent.exp().expect("exponent has no constant term")
}

/// Rescaling `binom(2n+β−1, n)/Γ(n+β+1)` relating `P^{(−1,β)}_n` to the monic `P̃`.
pub fn sj_beta_scale(n: u32, beta: HalfInt) -> ExactScalar {
    if n == 0 {
        return ExactScalar::one();
    }
    let b = beta.to_rational();
    recip_gamma(beta.shift(n as i64 + 1))
        .mul_rat(&binomial(&(int(2 * n as i64 - 1) + &b), n as u64))
}

/// Rescaled `P^{(−1,β)}_n`.
pub fn sj_beta_rescaled(n: u32, beta: HalfInt) -> Result<Poly> {
    Ok(sj_closed_beta(n, &beta.to_rational())?.scale(&sj_beta_scale(n, beta)))
}

/// `(x−1) C_1(−λ(x−1)) C_β(−λ(x+1))` truncated at `λ^order`; the coefficient
/// of `λ^n/n!` is `P^{(−1,β)}_{n+1}(x)`.
pub fn egf_beta_shifted(order: u32, beta: HalfInt) -> Result<CoeffSeries> {
    if beta.twice() <= -2 {
        return Err(Error::Param(format!("beta must exceed -1 (got {beta})")));
    }
    let tricomi = |alpha: HalfInt, arg: &Poly| -> Result<CoeffSeries> {
        let coeffs = (0..=order)
            .map(|r| Ok(arg.pow(r).scale(&tricomi_coeff(alpha, r as u64)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoeffSeries::new(coeffs))
    };
    let c1 = tricomi(HalfInt::ONE, &x_minus_1())?;
    let cb = tricomi(beta, &x_plus_1())?;
    let prod = c1.try_product(&cb)?;
    Ok(prod.map(|p| &x_minus_1() * p))
}

/// Leading coefficient is 1 and `deg = n`.
pub fn is_monic_of_degree(p: &Poly, n: u32) -> bool {
    p.degree("x") == Some(n) && opcalc::is_monic(p, "x")
}

/// Divides by the leading x-coefficient.
pub fn monic(p: &Poly) -> Option<Poly> {
    let lead = p.leading_coeff("x")?.as_constant()?;
    Some(p.scale(&lead.recip()?))
}

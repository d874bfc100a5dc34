//! Formal generalized hypergeometric series `pFq(a; b; c·z)`.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::scalar::{
    factorial, gamma_half, gamma_ratio, int, is_nonpositive_integer, pochhammer, recip_gamma,
    ExactScalar, HalfInt, Rational,
};
use crate::umbral::{GenMonomial, GenSeries};

/// Upper and lower parameters plus a scale multiplying the formal argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperSpec {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    arg_scale: ExactScalar,
}

impl HyperSpec {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, arg_scale: ExactScalar) -> Result<Self> {
        if let Some(b) = lower.iter().find(|b| is_nonpositive_integer(b)) {
            return Err(Error::Param(format!(
                "lower parameter {b} is a non-positive integer"
            )));
        }
        Ok(HyperSpec {
            upper,
            lower,
            arg_scale,
        })
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn arg_scale(&self) -> &ExactScalar {
        &self.arg_scale
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// `∏(a)_m / ∏(b)_m`, without the argument factor.
    pub fn pochhammer_ratio(&self, m: u64) -> Rational {
        let up = self
            .upper
            .iter()
            .fold(Rational::one(), |acc, a| acc * pochhammer(a, m));
        let down = self
            .lower
            .iter()
            .fold(Rational::one(), |acc, b| acc * pochhammer(b, m));
        up / down
    }

    /// Coefficient of `z^m`.
    pub fn coeff(&self, m: u64) -> ExactScalar {
        let r = self.pochhammer_ratio(m) / Rational::from_integer(factorial(m));
        self.arg_scale.pow(m as u32).mul_rat(&r)
    }

    /// Coefficients of `z^0 … z^order`.
    pub fn coeffs(&self, order: u64) -> Vec<ExactScalar> {
        (0..=order).map(|m| self.coeff(m)).collect()
    }
}

pub fn pfq_coeff(spec: &HyperSpec, m: u64) -> Result<ExactScalar> {
    if let Some(b) = spec.lower.iter().find(|b| is_nonpositive_integer(b)) {
        return Err(Error::Param(format!(
            "lower parameter {b} is a non-positive integer"
        )));
    }
    Ok(spec.coeff(m))
}

/// `∂_z^n pFq(a; b; c z) = c^n ∏(a)_n/∏(b)_n · pFq(a+n; b+n; c z)`.
pub fn pfq_derivative(spec: &HyperSpec, n: u64) -> Result<(ExactScalar, HyperSpec)> {
    let shift = int(n as i64);
    let upper: Vec<Rational> = spec.upper.iter().map(|a| a + &shift).collect();
    let lower: Vec<Rational> = spec.lower.iter().map(|b| b + &shift).collect();
    let prefactor = spec
        .arg_scale
        .pow(n as u32)
        .mul_rat(&spec.pochhammer_ratio(n));
    Ok((
        prefactor,
        HyperSpec::new(upper, lower, spec.arg_scale.clone())?,
    ))
}

/// Rewrites `Î(u^α v^β · pFq(z u^r v^s))` as `Γ(α)/Γ(β) · p+rFq+s(…; r^r/s^s z)`.
pub fn pochhammer_proliferate(
    alpha: HalfInt,
    beta: HalfInt,
    r: u32,
    s: u32,
    spec: &HyperSpec,
) -> Result<(ExactScalar, HyperSpec)> {
    if r == 0 || s == 0 {
        return Err(Error::Param(
            "proliferation orders r, s must be positive".into(),
        ));
    }
    for p in [alpha, beta] {
        if p.is_nonpositive_integer() {
            return Err(Error::Param(format!(
                "parameter {p} is a non-positive integer"
            )));
        }
    }
    let prefactor = gamma_ratio(alpha, beta)?;
    let (a, b) = (alpha.to_rational(), beta.to_rational());
    let mut upper = spec.upper.clone();
    upper.extend((0..r).map(|k| (&a + int(k as i64)) / int(r as i64)));
    let mut lower = spec.lower.clone();
    lower.extend((0..s).map(|t| (&b + int(t as i64)) / int(s as i64)));
    let rr: Rational = Pow::pow(&int(r as i64), r);
    let ss: Rational = Pow::pow(&int(s as i64), s);
    let arg_scale = spec.arg_scale.mul_rat(&(rr / ss));
    Ok((prefactor, HyperSpec::new(upper, lower, arg_scale)?))
}

/// Both sides of `Γ(n(s+x)) = n^{sn} Γ(nx) ∏_{j<n} (x + j/n)_s`.
pub fn gamma_multiplication(n: u32, s: u32, x: HalfInt) -> Result<(ExactScalar, ExactScalar)> {
    if n < 2 {
        return Err(Error::Param(
            "multiplication order must be at least 2".into(),
        ));
    }
    let lhs = gamma_half(x.shift(s as i64).scale(n as i64))?;
    let base = gamma_half(x.scale(n as i64))?;
    let xr = x.to_rational();
    let prod = (0..n).fold(Rational::one(), |acc, j| {
        acc * pochhammer(
            &(&xr + Rational::new(BigInt::from(j), BigInt::from(n))),
            s as u64,
        )
    });
    let pow: Rational = Pow::pow(&int(n as i64), s * n);
    Ok((lhs, base.mul_rat(&(pow * prod))))
}

/// Coefficient `1/(r! Γ(r + α + 1))` of the Tricomi–Bessel series `C_α(−z)`.
pub fn tricomi_coeff(alpha: HalfInt, r: u64) -> Result<ExactScalar> {
    if alpha.is_integer() && alpha.twice() <= -2 {
        return Err(Error::Pole(alpha));
    }
    let g = recip_gamma(alpha.shift(r as i64 + 1));
    Ok(g.mul_rat(&Rational::new(BigInt::one(), factorial(r))))
}

/// The m-th term of `Î(u^α v^β Σ_m c_m z^m u^{rm} v^{sm})`, transformed
/// monomial by monomial.
pub fn proliferation_term(
    alpha: HalfInt,
    beta: HalfInt,
    r: u32,
    s: u32,
    f: &HyperSpec,
    m: u64,
) -> Result<ExactScalar> {
    let term = GenMonomial::scalar(f.coeff(m))
        .u("u", alpha.shift(r as i64 * m as i64))
        .v("v", beta.shift(s as i64 * m as i64));
    let p = GenSeries::from_monomial(term).itransform_poly()?;
    Ok(p.as_constant().unwrap_or_else(ExactScalar::zero))
}

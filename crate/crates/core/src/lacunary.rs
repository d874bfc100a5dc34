//! Lacunary generating functions `G_{K,L}(λ) = Σ_n λ^n/n! p_{Kn+L}`.
//!
//! The multisection oracle selects indices directly; the closed forms sum
//! double series whose inner factor is a hypergeometric series in λ or λ².

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::families::{hermite_closed, matching_coeff, sj_closed_mm};
use crate::hyper::HyperSpec;
use crate::poly::{CoeffSeries, Poly};
use crate::scalar::{factorial, gamma_ratio, int, rat, ExactScalar, HalfInt, Rational};
use crate::umbral::{exp_truncated, lift_poly, GenMonomial, GenSeries, MU_VAR, UNBOUNDED};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LacunaryParams {
    pub k: u32,
    pub l: u32,
    pub order: u32,
}

impl LacunaryParams {
    pub fn new(k: u32, l: u32, order: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Param("K must be at least 1".into()));
        }
        Ok(LacunaryParams { k, l, order })
    }
}

/// Where the β-sum of the odd-K SJ closed form starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OddSumStart {
    /// β = 0, 1, …, K−1. Includes the leading monomial.
    #[default]
    Zero,
    /// β = 1, …, K−1.
    One,
}

fn inv_factorial(n: u64) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}

/// `Σ_{n ≤ order} λ^n/n! p_{Kn+L}` by direct index selection.
pub fn multisection_oracle(
    source: impl Fn(u32) -> Result<Poly>,
    params: LacunaryParams,
) -> Result<CoeffSeries> {
    let LacunaryParams { k, l, order } = params;
    let coeffs = (0..=order)
        .map(|n| Ok(source(k * n + l)?.scale_rat(&inv_factorial(n as u64))))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoeffSeries::new(coeffs))
}

/// Keeps every K-th coefficient of an EGF and rescales by `Γ(n+1)/Γ(n/K+1)`.
pub fn lacunary_dilate(egf: &CoeffSeries, k: u32) -> Result<CoeffSeries> {
    if k == 0 {
        return Err(Error::Param("K must be at least 1".into()));
    }
    let k = k as usize;
    let out_order = egf.order() / k;
    let coeffs = (0..=out_order)
        .map(|r| {
            let n = r * k;
            let scale = Rational::new(factorial(n as u64), factorial(r as u64));
            egf.coeff(n).scale_rat(&scale)
        })
        .collect();
    Ok(CoeffSeries::new(coeffs))
}

/// Adds `prefactor · Σ_m spec_m · x^{x_exp} z^{z_exp + z_step·m} λ^{s + λ_step·m}`.
#[allow(clippy::too_many_arguments)]
fn accumulate(
    out: &mut [Poly],
    s: u32,
    lambda_step: u32,
    prefactor: &ExactScalar,
    spec: &HyperSpec,
    x_exp: u32,
    z: Option<(u32, u32)>,
) -> Result<()> {
    let order = out.len() as u32 - 1;
    let mut m = 0u32;
    while s + lambda_step * m <= order {
        let c = prefactor * &spec.coeff(m as u64);
        let mono = match z {
            Some((z_exp, z_step)) => Poly::monomial(c, &[("x", x_exp), ("z", z_exp + z_step * m)]),
            None => Poly::monomial(c, &[("x", x_exp)]),
        };
        let slot = &mut out[(s + lambda_step * m) as usize];
        *slot = slot.try_add(&mono)?;
        m += 1;
    }
    Ok(())
}

struct Layout {
    betas: Vec<u32>,
    /// 1 for even K (argument ∝ λ), 2 for odd K (argument ∝ λ²).
    lambda_step: u32,
    /// Power of z per step of the hypergeometric argument.
    z_step: u32,
}

fn hermite_params(k: u32, s: u32, beta: u32) -> (Vec<Rational>, Vec<Rational>) {
    let kk = k as i64;
    let s_r = int(s as i64);
    if k.is_multiple_of(2) {
        let t = k / 2;
        let upper = (0..=kk - 2).map(|j| &s_r + rat(j + 1, kk)).collect();
        let lower = (0..t)
            .filter(|&l| l != t - 1 - beta)
            .map(|l| rat((beta + l + 1) as i64, t as i64))
            .collect();
        (upper, lower)
    } else {
        let half_s = rat(s as i64, 2);
        let upper = (0..=2 * kk - 2)
            .filter(|&j| j != kk - 1)
            .map(|j| &half_s + rat(j + 1, 2 * kk))
            .collect();
        let lower = (0..k)
            .filter(|&l| l + 1 + beta != k)
            .map(|l| rat((beta + l + 1) as i64, kk))
            .collect();
        (upper, lower)
    }
}

fn layout(k: u32, odd_start: OddSumStart) -> Layout {
    if k.is_multiple_of(2) {
        Layout {
            betas: (0..k / 2).collect(),
            lambda_step: 1,
            z_step: k / 2,
        }
    } else {
        let first = if odd_start == OddSumStart::One { 1 } else { 0 };
        Layout {
            betas: (first..k).collect(),
            lambda_step: 2,
            z_step: k,
        }
    }
}

/// Closed form of `H_{K,0}(λ; x, z)` truncated at `λ^order`.
pub fn hermite_lacunary_closed(k: u32, order: u32) -> Result<CoeffSeries> {
    if k == 0 {
        return Err(Error::Param("K must be at least 1".into()));
    }
    let lay = layout(k, OddSumStart::Zero);
    let arg: Rational = if k.is_multiple_of(2) {
        Pow::pow(&int(2 * k as i64), k / 2)
    } else {
        Pow::pow(&int(4 * k as i64), k) / int(4)
    };
    let mut out = vec![Poly::zero(); order as usize + 1];
    for &beta in &lay.betas {
        for s in 0..=order {
            let h = matching_coeff(k * s, beta);
            if h.is_zero() {
                continue;
            }
            let (upper, lower) = hermite_params(k, s, beta);
            let spec = HyperSpec::new(upper, lower, ExactScalar::from(arg.clone()))?;
            let pre = ExactScalar::from(h * inv_factorial(s as u64));
            accumulate(
                &mut out,
                s,
                lay.lambda_step,
                &pre,
                &spec,
                k * s - 2 * beta,
                Some((beta, lay.z_step)),
            )?;
        }
    }
    Ok(CoeffSeries::new(out))
}

/// Closed form of the SJ lacunary generating function `G_{K,0}(λ; x)`.
pub fn sj_lacunary_closed(k: u32, order: u32) -> Result<CoeffSeries> {
    sj_lacunary_closed_with(k, order, OddSumStart::Zero)
}

pub fn sj_lacunary_closed_with(k: u32, order: u32, odd_start: OddSumStart) -> Result<CoeffSeries> {
    if k == 0 {
        return Err(Error::Param("K must be at least 1".into()));
    }
    let lay = layout(k, odd_start);
    let kk = k as i64;
    let arg = if k.is_multiple_of(2) {
        Pow::pow(&rat(-1, 4), k / 2)
    } else {
        -Rational::new(BigInt::one(), Pow::pow(&BigInt::from(4), k + 1))
    };
    let mut out = vec![Poly::zero(); order as usize + 1];
    for &beta in &lay.betas {
        for s in 0..=order {
            let h = matching_coeff(k * s, beta);
            if h.is_zero() {
                continue;
            }
            let (mut upper, mut lower) = hermite_params(k, s, beta);
            let b = beta as i64;
            let s_r = int(s as i64);
            if k.is_multiple_of(2) {
                let t = kk / 2;
                upper.extend((0..t).map(|m| int(2 * s as i64) + rat(2 * m - 2 * b - 1, kk)));
                lower.extend((0..kk).map(|t| &s_r + rat(2 * t - 1, 2 * kk)));
            } else {
                upper.extend((0..kk).map(|m| &s_r + rat(2 * m - 2 * b - 1, 2 * kk)));
                let half_s = rat(s as i64, 2);
                lower.extend((0..2 * kk).map(|t| &half_s + rat(2 * t - 1, 4 * kk)));
            }
            let spec = HyperSpec::new(upper, lower, ExactScalar::from(arg.clone()))?;
            // Γ(Ks − β − 1/2)/Γ(Ks − 1/2)
            let ks = (k * s) as i64;
            let ratio = gamma_ratio(
                HalfInt::from_twice(2 * (ks - b) - 1),
                HalfInt::from_twice(2 * ks - 1),
            )?;
            let pre = ratio.mul_rat(&(h * inv_factorial(s as u64) * Pow::pow(&rat(-1, 4), beta)));
            accumulate(
                &mut out,
                s,
                lay.lambda_step,
                &pre,
                &spec,
                k * s - 2 * beta,
                None,
            )?;
        }
    }
    Ok(CoeffSeries::new(out))
}

/// Truncates the μ-degree of every coefficient.
fn truncate_mu(s: &CoeffSeries, mu_order: u32) -> CoeffSeries {
    s.map(|p| p.truncate_var(MU_VAR, mu_order))
}

/// `e^{μx + μ²z} H_{K,0}(λ; x + 2μz, z)`, with μ carried as the polynomial
/// variable [`MU_VAR`] and truncated at `μ^mu_order`.
pub fn hermite_lacunary_shift(k: u32, mu_order: u32, order: u32) -> Result<CoeffSeries> {
    let base = hermite_lacunary_closed(k, order)?;
    let mu = Poly::var(MU_VAR);
    let shift = (&mu * &Poly::var("z")).scale_rat(&int(2));
    let shifted = base.map(|p| {
        p.shift_var("x", &shift)
            .expect("shift does not involve x")
            .truncate_var(MU_VAR, mu_order)
    });
    // e^{μx + μ²z} as a polynomial in μ
    let exponent = CoeffSeries::new(
        (0..=mu_order)
            .map(|j| match j {
                1 => Poly::var("x"),
                2 => Poly::var("z"),
                _ => Poly::zero(),
            })
            .collect(),
    );
    let e = exponent.exp()?;
    let e_poly = e
        .coeffs()
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (j, c)| {
            &acc + &c.mul_var(MU_VAR, j as u32)
        });
    Ok(truncate_mu(&shifted.map(|p| p * &e_poly), mu_order))
}

/// `Î((uv)^{−1/2} e^{μuvx − μ²uv²/4} H_{K,0}(λ(uv)^K; x − μv/2, −1/(4u)))`.
pub fn sj_lacunary_shift_gen(k: u32, mu_order: u32, order: u32) -> Result<CoeffSeries> {
    let hk = hermite_lacunary_closed(k, order)?;
    let w = "w";
    let z_image =
        GenMonomial::scalar(ExactScalar::from(rat(-1, 4))).u("u", HalfInt::from_twice(-2));
    let w_image = GenMonomial::scalar(ExactScalar::from(rat(-1, 2)))
        .v("v", HalfInt::ONE)
        .mu(1);
    let mut inner = GenSeries::new(order, mu_order);
    for (s, c) in hk.coeffs().iter().enumerate() {
        let shifted = c.shift_var("x", &Poly::var(w))?;
        let lifted = lift_poly(&shifted, &[("z", z_image.clone()), (w, w_image.clone())])?;
        let uvk = HalfInt::int((k as usize * s) as i64);
        let scale = GenMonomial::one().u("u", uvk).v("v", uvk).lambda(s as u32);
        for t in lifted.mul_monomial(&scale)?.terms() {
            inner.push(t)?;
        }
    }
    let x = Poly::var("x");
    let exponent = [
        GenMonomial::new(x)
            .u("u", HalfInt::ONE)
            .v("v", HalfInt::ONE)
            .mu(1),
        GenMonomial::scalar(ExactScalar::from(rat(-1, 4)))
            .u("u", HalfInt::ONE)
            .v("v", HalfInt::int(2))
            .mu(2),
    ];
    let e = exp_truncated(&exponent, UNBOUNDED, mu_order)?;
    let prefix = GenMonomial::one()
        .u("u", HalfInt::from_twice(-1))
        .v("v", HalfInt::from_twice(-1));
    let full = inner
        .try_mul(&e)?
        .mul_monomial(&prefix)?
        .with_orders(order, mu_order);
    let out = full.itransform()?;
    Ok(truncate_mu(&out, mu_order))
}

/// `L! · [μ^L]` of a shift generator, as a series in λ.
pub fn mu_slice(gen: &CoeffSeries, l: u32) -> CoeffSeries {
    let f = Rational::from_integer(factorial(l as u64));
    gen.map(|p| p.coeff_of(MU_VAR, l).scale_rat(&f))
}

/// `h^{(K,L)}_{r,m}(z)`: `(r+m)!` times the coefficient of `x^r λ^{r+m}` in `H_{K,L}`.
pub fn hermite_lacunary_coeff(k: u32, l: u32, r: u32, m: u32) -> Result<Poly> {
    let n = r + m;
    let series = multisection_oracle(|i| Ok(hermite_closed(i)), LacunaryParams::new(k, l, n)?)?;
    Ok(series
        .coeff(n as usize)
        .coeff_of("x", r)
        .scale_rat(&Rational::from_integer(factorial(n as u64))))
}

/// `g^{(K,L)}_{r,m}`: the SJ analogue of [`hermite_lacunary_coeff`].
pub fn sj_lacunary_coeff(k: u32, l: u32, r: u32, m: u32) -> Result<ExactScalar> {
    let n = r + m;
    let series = multisection_oracle(
        |i| Ok(sj_closed_mm(i, &Rational::zero())),
        LacunaryParams::new(k, l, n)?,
    )?;
    let c = series
        .coeff(n as usize)
        .coeff_of("x", r)
        .scale_rat(&Rational::from_integer(factorial(n as u64)));
    Ok(c.as_constant().expect("univariate coefficient"))
}

/// Both sides of `g_{r,m} = Î((uv)^{K(r+m)+L−1/2} h_{r,m}(−1/(4u)))`.
pub fn coeff_bridge_check(k: u32, l: u32, r: u32, m: u32) -> Result<(ExactScalar, ExactScalar)> {
    let g = sj_lacunary_coeff(k, l, r, m)?;
    let h = hermite_lacunary_coeff(k, l, r, m)?;
    let z_image =
        GenMonomial::scalar(ExactScalar::from(rat(-1, 4))).u("u", HalfInt::from_twice(-2));
    let e = HalfInt::from_twice(2 * (k * (r + m) + l) as i64 - 1);
    let lifted =
        lift_poly(&h, &[("z", z_image)])?.mul_monomial(&GenMonomial::one().u("u", e).v("v", e))?;
    let rhs = lifted
        .itransform_poly()?
        .as_constant()
        .expect("constant after transform");
    Ok((g, rhs))
}

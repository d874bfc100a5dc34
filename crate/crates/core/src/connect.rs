//! Connection coefficients `x^M = Σ_n A_{M,n} P_n(x)` for the SJ (α = β = −1)
//! and two-variable Hermite families, the formal Gaussian pairing, and the
//! evolution `∂_t P = (1−x²)∂²_x P` solved in the SJ eigenbasis.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::families::{hermite_closed, sj_closed_mm};
use crate::hyper::HyperSpec;
use crate::par::Exec;
use crate::poly::{CoeffSeries, Poly};
use crate::scalar::{
    binomial_int, factorial, gamma_ratio, int, rat, ExactScalar, HalfInt, Rational,
};
use crate::umbral::{exp_truncated, GenMonomial, MU_VAR};

/// Second variable of the Hermite connection coefficients.
pub const HERMITE_VAR: &str = "y";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectionFamily {
    SjMm,
    Hermite,
}

impl ConnectionFamily {
    /// The basis polynomial `P_n`, in `x` (and `y` for Hermite).
    pub fn poly(self, n: u32) -> Poly {
        match self {
            ConnectionFamily::SjMm => sj_closed_mm(n, &Rational::zero()),
            ConnectionFamily::Hermite => hermite_closed(n).rename_var("z", HERMITE_VAR),
        }
    }

    /// `A_{M,n}` as a polynomial (constant for SJ).
    pub fn coeff(self, m: u32, n: u32) -> Result<Poly> {
        match self {
            ConnectionFamily::SjMm => Ok(Poly::from_rational(sj_connection(m, n)?)),
            ConnectionFamily::Hermite => hermite_connection(m, n, HERMITE_VAR),
        }
    }
}

impl fmt::Display for ConnectionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConnectionFamily::SjMm => "sj",
            ConnectionFamily::Hermite => "hermite",
        })
    }
}

impl FromStr for ConnectionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sj" | "sj_mm" => Ok(ConnectionFamily::SjMm),
            "hermite" | "hermite2" => Ok(ConnectionFamily::Hermite),
            _ => Err(Error::Param(format!("unknown connection family `{s}`"))),
        }
    }
}

fn check_index(m: u32, n: u32) -> Result<()> {
    if n > m {
        return Err(Error::Index(format!("n = {n} exceeds M = {m}")));
    }
    Ok(())
}

/// `A_{M,n}` for the SJ family, via
/// `A_{M,M−2k} = M!/(k!(M−2k)!) · Γ(M−2k+1/2)/(4^k Γ(M−k+1/2))`.
pub fn sj_connection(m: u32, n: u32) -> Result<Rational> {
    check_index(m, n)?;
    if (m - n) % 2 == 1 {
        return Ok(Rational::zero());
    }
    let k = (m - n) / 2;
    let comb = Rational::new(
        factorial(m as u64),
        factorial(k as u64) * factorial(n as u64),
    );
    let ratio = gamma_ratio(
        HalfInt::from_twice(2 * n as i64 + 1),
        HalfInt::from_twice(2 * (m - k) as i64 + 1),
    )?;
    let quarter: Rational = Pow::pow(&rat(1, 4), k);
    ratio
        .mul_rat(&(comb * quarter))
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::Internal("connection coefficient is not rational".into()))
}

/// `A_{M,n}` from `binom(2n,n) M! ((M+n)/2)! / ((M+n)! ((M−n)/2)!)`.
pub fn sj_connection_binomial(m: u32, n: u32) -> Result<Rational> {
    check_index(m, n)?;
    if (m + n) % 2 == 1 {
        return Ok(Rational::zero());
    }
    let (m, n) = (m as u64, n as u64);
    let num = binomial_int(2 * n, n) * factorial(m) * factorial((m + n) / 2);
    let den = factorial(m + n) * factorial((m - n) / 2);
    Ok(Rational::new(num, den))
}

/// `a_{M,M−2k}(y) = (−y)^k M!/(k!(M−2k)!)`, zero when `M−n` is odd.
pub fn hermite_connection(m: u32, n: u32, var: &str) -> Result<Poly> {
    check_index(m, n)?;
    if (m - n) % 2 == 1 {
        return Ok(Poly::zero());
    }
    let k = (m - n) / 2;
    let c = Rational::new(
        factorial(m as u64),
        factorial(k as u64) * factorial(n as u64),
    );
    let c = if k % 2 == 1 { -c } else { c };
    Ok(Poly::monomial(ExactScalar::from(c), &[(var, k)]))
}

/// Triangular table `A[M][n]`, `0 ≤ n ≤ M ≤ max_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionTable {
    pub family: ConnectionFamily,
    pub max_m: u32,
    pub entries: Vec<Vec<Poly>>,
}

impl ConnectionTable {
    pub fn build(family: ConnectionFamily, max_m: u32, exec: Exec) -> Result<Self> {
        let rows = exec.map((0..=max_m).collect(), |m| {
            (0..=m)
                .map(|n| family.coeff(m, n))
                .collect::<Result<Vec<_>>>()
        });
        let entries = rows.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(ConnectionTable {
            family,
            max_m,
            entries,
        })
    }

    pub fn get(&self, m: u32, n: u32) -> Option<&Poly> {
        self.entries.get(m as usize)?.get(n as usize)
    }
}

/// `Σ_n A_{M,n} P_n(x)`; equals `x^M`.
pub fn reconstruct_monomial(m: u32, family: ConnectionFamily) -> Result<Poly> {
    let mut out = Poly::zero();
    for n in 0..=m {
        out = out.try_add(&family.coeff(m, n)?.try_mul(&family.poly(n))?)?;
    }
    Ok(out)
}

/// `Σ_n a_{M,n} b_{n,L}` where `b_{n,L}` is the `x^L` coefficient of `P_n`.
///
/// Returns a polynomial in `y` for Hermite and a constant for SJ.
pub fn biorthogonality_check(m: u32, l: u32, family: ConnectionFamily) -> Result<Poly> {
    let mut out = Poly::zero();
    for n in l..=m {
        let b = family.poly(n).coeff_of("x", l);
        out = out.try_add(&family.coeff(m, n)?.try_mul(&b)?)?;
    }
    Ok(out)
}

/// The pairing `w^r w̄^s ↦ r! δ_{r,s}` applied to `F(w) G(w̄)`, summed over
/// `r ≤ order`.
pub fn gaussian_pair(f: &Poly, w: &str, g: &Poly, wbar: &str, order: u32) -> Result<Poly> {
    let mut out = Poly::zero();
    for r in 0..=order {
        let fr = f.coeff_of(w, r);
        let gr = g.coeff_of(wbar, r);
        if fr.is_zero() || gr.is_zero() {
            continue;
        }
        let moment = Rational::from_integer(factorial(r as u64));
        out = out.try_add(&fr.try_mul(&gr)?.scale_rat(&moment))?;
    }
    Ok(out)
}

/// Folds a λ-series into a polynomial, with λ renamed to `var`.
fn series_to_poly(s: &CoeffSeries, var: &str) -> Result<Poly> {
    let mut out = Poly::zero();
    for (k, c) in s.coeffs().iter().enumerate() {
        out = out.try_add(&c.mul_var(var, k as u32))?;
    }
    Ok(out)
}

/// `A_H(α, w; y) = e^{αw − α²y}` truncated at `α^order`.
pub fn hermite_pair_a(order: u32) -> Result<Poly> {
    let exponent = CoeffSeries::monomial(Poly::var("w"), 1, order as usize).add(
        &CoeffSeries::monomial(-Poly::var(HERMITE_VAR), 2, order as usize),
    );
    series_to_poly(&exponent.exp()?, "alpha")
}

/// `B_H(w̄, β; y) = e^{w̄β + w̄²y}` truncated at `w̄^order`.
pub fn hermite_pair_b(order: u32) -> Result<Poly> {
    let exponent = CoeffSeries::monomial(Poly::var("beta"), 1, order as usize).add(
        &CoeffSeries::monomial(Poly::var(HERMITE_VAR), 2, order as usize),
    );
    series_to_poly(&exponent.exp()?, "wbar")
}

/// `A(α, w) = Î(√(uv) e^{αwuv + α²v/4})` truncated at `α^order`.
pub fn sj_pair_a(order: u32) -> Result<Poly> {
    let one = HalfInt::ONE;
    let exponent = [
        GenMonomial::one().u("u", one).v("v", one).lambda(1).mu(1),
        GenMonomial::scalar(ExactScalar::from(rat(1, 4)))
            .v("v", one)
            .lambda(2),
    ];
    let half = HalfInt::HALF;
    let s = exp_truncated(&exponent, order, order)?
        .mul_monomial(&GenMonomial::one().u("u", half).v("v", half))?
        .itransform()?;
    Ok(series_to_poly(&s, "alpha")?.rename_var(MU_VAR, "w"))
}

/// `B(w̄, β) = Î((uv)^{−1/2} e^{βw̄uv − w̄²uv²/4})` truncated at `w̄^order`.
pub fn sj_pair_b(order: u32) -> Result<Poly> {
    let one = HalfInt::ONE;
    let exponent = [
        GenMonomial::one().u("u", one).v("v", one).lambda(1).mu(1),
        GenMonomial::scalar(ExactScalar::from(rat(-1, 4)))
            .u("u", one)
            .v("v", HalfInt::int(2))
            .lambda(2),
    ];
    let neg_half = -HalfInt::HALF;
    let s = exp_truncated(&exponent, order, order)?
        .mul_monomial(&GenMonomial::one().u("u", neg_half).v("v", neg_half))?
        .itransform()?;
    Ok(series_to_poly(&s, "wbar")?.rename_var(MU_VAR, "beta"))
}

/// `Σ_{k ≤ order} (αβ)^k/k!`.
pub fn exp_alpha_beta(order: u32) -> Poly {
    (0..=order).fold(Poly::zero(), |acc, k| {
        let c = Rational::new(One::one(), factorial(k as u64));
        &acc + &Poly::monomial(ExactScalar::from(c), &[("alpha", k), ("beta", k)])
    })
}

/// Pairs the two generating functions of `family` and keeps `α`-degrees up
/// to `order`, where the truncation is exact.
pub fn pair_generating_functions(family: ConnectionFamily, order: u32) -> Result<Poly> {
    let (a, b) = match family {
        ConnectionFamily::Hermite => (hermite_pair_a(order)?, hermite_pair_b(order)?),
        ConnectionFamily::SjMm => (sj_pair_a(order)?, sj_pair_b(order)?),
    };
    Ok(gaussian_pair(&a, "w", &b, "wbar", order)?.truncate_var("alpha", order))
}

/// `(λμ)^M/M! · ₀F₁(M+1/2; λ²/4)` with λ-degree ≤ `order`, as a polynomial in
/// `lambda` and `mu`.
pub fn connection_gf_coeff(m: u32, order: u32) -> Result<Poly> {
    let spec = HyperSpec::new(
        vec![],
        vec![int(m as i64) + rat(1, 2)],
        ExactScalar::from(rat(1, 4)),
    )?;
    let lead = Rational::new(One::one(), factorial(m as u64));
    let mut out = Poly::zero();
    let mut j = 0u32;
    while m + 2 * j <= order {
        let c = spec.coeff(j as u64).mul_rat(&lead);
        out = out.try_add(&Poly::monomial(c, &[("lambda", m + 2 * j), ("mu", m)]))?;
        j += 1;
    }
    Ok(out)
}

/// `Σ_{n,M} λ^M/M! μ^n A_{M,n}` restricted to `μ^m` and λ-degree ≤ `order`.
pub fn connection_gf_from_table(m: u32, order: u32) -> Result<Poly> {
    let mut out = Poly::zero();
    for big_m in m..=order {
        let c = sj_connection(big_m, m)? / Rational::from_integer(factorial(big_m as u64));
        out = out.try_add(&Poly::monomial(
            ExactScalar::from(c),
            &[("lambda", big_m), ("mu", m)],
        ))?;
    }
    Ok(out)
}

/// `P(t; x) = Σ_n A_{N0,n} e^{−n(n−1)t} P_n(x)` as a Taylor series in `t`.
pub fn reaction_solve(n0: u32, t_order: u32) -> Result<CoeffSeries> {
    let family = ConnectionFamily::SjMm;
    let parts: Vec<(Rational, Poly)> = (0..=n0)
        .map(|n| Ok((sj_connection(n0, n)?, family.poly(n))))
        .collect::<Result<_>>()?;
    let coeffs = (0..=t_order)
        .map(|k| {
            let kf = Rational::new(One::one(), factorial(k as u64));
            parts
                .iter()
                .enumerate()
                .fold(Poly::zero(), |acc, (n, (a, p))| {
                    if a.is_zero() {
                        return acc;
                    }
                    let n = n as i64;
                    let ev: Rational = Pow::pow(&int(-n * (n - 1)), k);
                    &acc + &p.scale_rat(&(a * ev * &kf))
                })
        })
        .collect();
    Ok(CoeffSeries::new(coeffs))
}

/// `(k+1) c_{k+1} − (1−x²) c_k''` for each `k < order`; all zero for a
/// solution of the evolution equation.
pub fn evolution_residual(p: &CoeffSeries) -> Vec<Poly> {
    let one_minus_x2 = &Poly::one() - &Poly::var("x").pow(2);
    (0..p.order())
        .map(|k| {
            let lhs = p.coeff(k + 1).scale_rat(&int(k as i64 + 1));
            &lhs - &(&one_minus_x2 * &p.coeff(k).nth_derivative("x", 2))
        })
        .collect()
}

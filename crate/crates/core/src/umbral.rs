//! The formal integral transform Î on generalized monomials.
//!
//! A generalized monomial is `c · ∏ u_i^{a_i} ∏ v_j^{b_j} λ^k μ^l` with
//! half-integer exponents `a_i, b_j` and a polynomial coefficient `c`.
//! Î replaces each `u^a` by Γ(a) and each `v^b` by 1/Γ(b).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{CoeffSeries, Poly};
use crate::scalar::{binomial_int, gamma_half, rat, recip_gamma, ExactScalar, HalfInt, Rational};

/// Truncation order meaning "no truncation".
pub const UNBOUNDED: u32 = u32::MAX;

/// Name of the polynomial variable that carries μ after the transform.
pub const MU_VAR: &str = "mu";

/// Exponent data of a generalized monomial. Zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenKey {
    u: BTreeMap<String, HalfInt>,
    v: BTreeMap<String, HalfInt>,
    lambda: u32,
    mu: u32,
}

fn merge_exps(
    a: &BTreeMap<String, HalfInt>,
    b: &BTreeMap<String, HalfInt>,
) -> BTreeMap<String, HalfInt> {
    let mut out = a.clone();
    for (k, e) in b {
        let sum = out.get(k).copied().unwrap_or(HalfInt::ZERO) + *e;
        if sum.is_zero() {
            out.remove(k);
        } else {
            out.insert(k.clone(), sum);
        }
    }
    out
}

impl GenKey {
    pub fn u_exps(&self) -> &BTreeMap<String, HalfInt> {
        &self.u
    }

    pub fn v_exps(&self) -> &BTreeMap<String, HalfInt> {
        &self.v
    }

    pub fn lambda_pow(&self) -> u32 {
        self.lambda
    }

    pub fn mu_pow(&self) -> u32 {
        self.mu
    }

    fn mul(&self, other: &GenKey) -> GenKey {
        GenKey {
            u: merge_exps(&self.u, &other.u),
            v: merge_exps(&self.v, &other.v),
            lambda: self.lambda + other.lambda,
            mu: self.mu + other.mu,
        }
    }
}

impl fmt::Display for GenKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in self.u.iter().chain(&self.v) {
            parts.push(format!("{name}^({e})"));
        }
        if self.lambda > 0 {
            parts.push(format!("lambda^{}", self.lambda));
        }
        if self.mu > 0 {
            parts.push(format!("mu^{}", self.mu));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// `coeff · u^… v^… λ^k μ^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMonomial {
    pub coeff: Poly,
    pub key: GenKey,
}

impl GenMonomial {
    pub fn new(coeff: Poly) -> Self {
        GenMonomial {
            coeff,
            key: GenKey::default(),
        }
    }

    pub fn scalar(c: ExactScalar) -> Self {
        GenMonomial::new(Poly::constant(c))
    }

    pub fn one() -> Self {
        GenMonomial::new(Poly::one())
    }

    /// Multiplies by `name^e` in the u-alphabet.
    pub fn u(mut self, name: &str, e: HalfInt) -> Self {
        self.key.u = merge_exps(&self.key.u, &BTreeMap::from([(name.to_string(), e)]));
        self
    }

    /// Multiplies by `name^e` in the v-alphabet.
    pub fn v(mut self, name: &str, e: HalfInt) -> Self {
        self.key.v = merge_exps(&self.key.v, &BTreeMap::from([(name.to_string(), e)]));
        self
    }

    pub fn lambda(mut self, k: u32) -> Self {
        self.key.lambda += k;
        self
    }

    pub fn mu(mut self, k: u32) -> Self {
        self.key.mu += k;
        self
    }

    pub fn mul(&self, other: &GenMonomial) -> Result<GenMonomial> {
        Ok(GenMonomial {
            coeff: self.coeff.try_mul(&other.coeff)?,
            key: self.key.mul(&other.key),
        })
    }

    pub fn pow(&self, k: u32) -> Result<GenMonomial> {
        (0..k).try_fold(GenMonomial::one(), |acc, _| acc.mul(self))
    }
}

/// A finite sum of generalized monomials truncated in λ and μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSeries {
    terms: BTreeMap<GenKey, Poly>,
    lambda_order: u32,
    mu_order: u32,
}

impl GenSeries {
    pub fn new(lambda_order: u32, mu_order: u32) -> Self {
        GenSeries {
            terms: BTreeMap::new(),
            lambda_order,
            mu_order,
        }
    }

    /// A series without truncation holding one monomial.
    pub fn from_monomial(m: GenMonomial) -> Self {
        let mut s = GenSeries::new(UNBOUNDED, UNBOUNDED);
        s.push(m).expect("single monomial");
        s
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = GenMonomial>) -> Result<Self> {
        let mut s = GenSeries::new(UNBOUNDED, UNBOUNDED);
        for m in ms {
            s.push(m)?;
        }
        Ok(s)
    }

    pub fn one() -> Self {
        GenSeries::from_monomial(GenMonomial::one())
    }

    pub fn lambda_order(&self) -> u32 {
        self.lambda_order
    }

    pub fn mu_order(&self) -> u32 {
        self.mu_order
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = GenMonomial> + '_ {
        self.terms.iter().map(|(k, c)| GenMonomial {
            coeff: c.clone(),
            key: k.clone(),
        })
    }

    pub fn with_orders(mut self, lambda_order: u32, mu_order: u32) -> Self {
        self.lambda_order = self.lambda_order.min(lambda_order);
        self.mu_order = self.mu_order.min(mu_order);
        self.terms
            .retain(|k, _| k.lambda <= self.lambda_order && k.mu <= self.mu_order);
        self
    }

    /// Adds a monomial, dropping it if it lies beyond the truncation orders.
    pub fn push(&mut self, m: GenMonomial) -> Result<()> {
        if m.coeff.is_zero() || m.key.lambda > self.lambda_order || m.key.mu > self.mu_order {
            return Ok(());
        }
        let sum = match self.terms.get(&m.key) {
            Some(old) => old.try_add(&m.coeff)?,
            None => m.coeff,
        };
        if sum.is_zero() {
            self.terms.remove(&m.key);
        } else {
            self.terms.insert(m.key, sum);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GenSeries) -> Result<GenSeries> {
        let mut out = self.clone().with_orders(other.lambda_order, other.mu_order);
        for m in other.terms() {
            out.push(m)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> GenSeries {
        let mut out = GenSeries::new(self.lambda_order, self.mu_order);
        for m in self.terms() {
            out.push(GenMonomial {
                coeff: m.coeff.scale(c),
                key: m.key,
            })
            .expect("scaling keeps pi powers aligned");
        }
        out
    }

    /// Multiplies every term by a monomial.
    pub fn mul_monomial(&self, m: &GenMonomial) -> Result<GenSeries> {
        let mut out = GenSeries::new(self.lambda_order, self.mu_order);
        for t in self.terms() {
            out.push(t.mul(m)?)?;
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &GenSeries) -> Result<GenSeries> {
        let mut out = GenSeries::new(
            self.lambda_order.min(other.lambda_order),
            self.mu_order.min(other.mu_order),
        );
        for a in self.terms() {
            for b in other.terms() {
                if a.key.lambda + b.key.lambda > out.lambda_order
                    || a.key.mu + b.key.mu > out.mu_order
                {
                    continue;
                }
                out.push(a.mul(&b)?)?;
            }
        }
        Ok(out)
    }

    /// Applies Î. The result is a series in λ whose coefficients are
    /// polynomials in the coefficient variables and [`MU_VAR`].
    pub fn itransform(&self) -> Result<CoeffSeries> {
        let order = if self.lambda_order == UNBOUNDED {
            self.terms.keys().map(|k| k.lambda).max().unwrap_or(0)
        } else {
            self.lambda_order
        };
        let mut coeffs = vec![Poly::zero(); order as usize + 1];
        for (key, c) in &self.terms {
            for (name, e) in &key.u {
                if e.is_nonpositive_integer() {
                    return Err(Error::Domain {
                        term: format!("({}) {}", c, key),
                        var: name.clone(),
                        exponent: *e,
                    });
                }
            }
        }
        for (key, c) in &self.terms {
            let mut factor = ExactScalar::one();
            for e in key.u.values() {
                factor = &factor * &gamma_half(*e)?;
            }
            for e in key.v.values() {
                factor = &factor * &recip_gamma(*e);
            }
            if factor.is_zero() {
                continue;
            }
            let mut term = c.scale(&factor);
            if key.mu > 0 {
                term = term.mul_var(MU_VAR, key.mu);
            }
            let slot = &mut coeffs[key.lambda as usize];
            *slot = slot.try_add(&term)?;
        }
        Ok(CoeffSeries::new(coeffs))
    }

    /// Î of a series without λ or μ grading, as a single polynomial.
    pub fn itransform_poly(&self) -> Result<Poly> {
        Ok(self.itransform()?.coeff(0).clone())
    }
}

pub fn itransform(s: &GenSeries) -> Result<CoeffSeries> {
    s.itransform()
}

/// Truncated product; Î of the product factorizes when the alphabets are disjoint.
pub fn gen_product(a: &GenSeries, b: &GenSeries) -> Result<GenSeries> {
    a.try_mul(b)
}

/// `Σ_{k ≤ order} base^k / k!`.
///
/// `order` counts powers of `base`. The resulting λ/μ truncation orders are
/// the largest orders at which the expansion is complete.
pub fn expand_exponential(base: &GenMonomial, order: u32) -> Result<GenSeries> {
    let (l, m) = (base.key.lambda, base.key.mu);
    if l + m == 0 {
        return Err(Error::Expansion(format!(
            "`{}` carries no lambda or mu grading",
            base.key
        )));
    }
    let complete = |p: u32| {
        if p == 0 {
            UNBOUNDED
        } else {
            p * (order + 1) - 1
        }
    };
    let mut out = GenSeries::new(complete(l), complete(m));
    let mut power = GenMonomial::one();
    let mut inv_fact = ExactScalar::one();
    for k in 0..=order {
        if k > 0 {
            power = power.mul(base)?;
            inv_fact = inv_fact.mul_rat(&rat(1, k as i64));
        }
        out.push(GenMonomial {
            coeff: power.coeff.scale(&inv_fact),
            key: power.key.clone(),
        })?;
    }
    Ok(out)
}

/// `exp` of a sum of graded monomials, truncated at the given orders.
pub fn exp_truncated(
    exponent: &[GenMonomial],
    lambda_order: u32,
    mu_order: u32,
) -> Result<GenSeries> {
    let mut out = GenSeries::one().with_orders(lambda_order, mu_order);
    for base in exponent {
        let (l, m) = (base.key.lambda, base.key.mu);
        if l + m == 0 {
            return Err(Error::Expansion(format!(
                "`{}` carries no lambda or mu grading",
                base.key
            )));
        }
        let by_l = lambda_order.checked_div(l).unwrap_or(u32::MAX);
        let by_m = mu_order.checked_div(m).unwrap_or(u32::MAX);
        let factor = expand_exponential(base, by_l.min(by_m))?.with_orders(lambda_order, mu_order);
        out = out.try_mul(&factor)?;
    }
    Ok(out)
}

/// Replaces each listed polynomial variable by a generalized monomial.
/// Variables not listed stay in the polynomial coefficient.
pub fn lift_poly(p: &Poly, subs: &[(&str, GenMonomial)]) -> Result<GenSeries> {
    let mut out = GenSeries::new(UNBOUNDED, UNBOUNDED);
    let vars: Vec<String> = p.vars().to_vec();
    for (exps, c) in p.terms() {
        let mut rest: Vec<(&str, u32)> = Vec::new();
        let mut m = GenMonomial::one();
        for (v, e) in vars.iter().zip(exps) {
            match subs.iter().find(|(name, _)| name == v) {
                Some((_, g)) => m = m.mul(&g.pow(*e)?)?,
                None => rest.push((v, *e)),
            }
        }
        let coeff = Poly::monomial(c.clone(), &rest);
        out.push(GenMonomial {
            coeff: coeff.try_mul(&m.coeff)?,
            key: m.key,
        })?;
    }
    Ok(out)
}

fn signed_binomial(n: u32, k: u32) -> ExactScalar {
    let c = Rational::from_integer(binomial_int(n as u64, k as u64));
    ExactScalar::from(if k.is_multiple_of(2) { c } else { -c })
}

/// `(u1 v1)^{N+1} (u2 v2)^N v1^p (1 − u1² v1 u2 v2²)^p`, whose transform is 0
/// for `p ≥ 1`.
pub fn null_identity_series(n: HalfInt, p: u32) -> Result<GenSeries> {
    let mut s = GenSeries::new(UNBOUNDED, UNBOUNDED);
    for k in 0..=p {
        let kk = k as i64;
        s.push(
            GenMonomial::scalar(signed_binomial(p, k))
                .u("u1", n.shift(1 + 2 * kk))
                .v("v1", n.shift(1 + p as i64 + kk))
                .u("u2", n.shift(kk))
                .v("v2", n.shift(2 * kk)),
        )?;
    }
    Ok(s)
}

/// `(u1 v1)^{N+1} (u2 v2)^N`, whose transform is 1.
pub fn unit_identity_series(n: HalfInt) -> GenSeries {
    GenSeries::from_monomial(
        GenMonomial::one()
            .u("u1", n.shift(1))
            .v("v1", n.shift(1))
            .u("u2", n)
            .v("v2", n),
    )
}

/// `u1^a u2^b v^{a+b} (1 − u1 v)^n`, whose transform is `B(a, b+n)`.
pub fn beta_shift_series(a: HalfInt, b: HalfInt, n: u32) -> Result<GenSeries> {
    let mut s = GenSeries::new(UNBOUNDED, UNBOUNDED);
    for k in 0..=n {
        let kk = k as i64;
        s.push(
            GenMonomial::scalar(signed_binomial(n, k))
                .u("u1", a.shift(kk))
                .u("u2", b)
                .v("v", (a + b).shift(kk)),
        )?;
    }
    Ok(s)
}

/// `u1^a u2^b v^{a+b+n} (u1 + u2)^n`, whose transform is `B(a, b)`.
pub fn beta_sum_series(a: HalfInt, b: HalfInt, n: u32) -> Result<GenSeries> {
    let mut s = GenSeries::new(UNBOUNDED, UNBOUNDED);
    for k in 0..=n {
        let c = ExactScalar::from(Rational::from_integer(binomial_int(n as u64, k as u64)));
        let (kk, nn) = (k as i64, n as i64);
        s.push(
            GenMonomial::scalar(c)
                .u("u1", a.shift(kk))
                .u("u2", b.shift(nn - kk))
                .v("v", (a + b).shift(nn)),
        )?;
    }
    Ok(s)
}

//! Sparse multivariate polynomials over [`ExactScalar`].
//!
//! Variables are named and kept sorted; binary operations work on the union
//! of both variable lists. Exponent vectors are indexed by position in
//! `vars`.

mod render;
mod series;

pub use render::{PolyJson, TermJson};
pub use series::CoeffSeries;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Rational};

#[derive(Clone, Debug, Default)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, ExactScalar>,
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().chain(b).cloned().collect();
    out.sort();
    out.dedup();
    out
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn from_rational(r: Rational) -> Self {
        Poly::constant(ExactScalar::from(r))
    }

    pub fn var(name: &str) -> Self {
        Poly::monomial(ExactScalar::one(), &[(name, 1)])
    }

    /// `coeff · ∏ name^exp`.
    pub fn monomial(coeff: ExactScalar, powers: &[(&str, u32)]) -> Self {
        let mut vars: Vec<String> = powers.iter().map(|(v, _)| v.to_string()).collect();
        vars.sort();
        vars.dedup();
        let mut exps = vec![0u32; vars.len()];
        for (v, e) in powers {
            let i = vars.iter().position(|w| w == v).unwrap();
            exps[i] += e;
        }
        let mut p = Poly {
            vars,
            terms: BTreeMap::new(),
        };
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// Builds a polynomial from raw terms; repeated exponents are summed.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, ExactScalar)>,
    {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::Param("duplicate variable name".into()));
        }
        let perm: Vec<usize> = names
            .iter()
            .map(|n| sorted.iter().position(|s| s == n).unwrap())
            .collect();
        let mut p = Poly {
            vars: sorted,
            terms: BTreeMap::new(),
        };
        for (exps, c) in terms {
            if exps.len() != names.len() {
                return Err(Error::Param(format!(
                    "exponent vector of length {} for {} variables",
                    exps.len(),
                    names.len()
                )));
            }
            let mut e = vec![0u32; names.len()];
            for (i, x) in exps.into_iter().enumerate() {
                e[perm[i]] = x;
            }
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over `(exponents, coefficient)` with exponents aligned to [`Poly::vars`].
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &ExactScalar)> {
        self.terms.iter()
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: ExactScalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get(&exps) {
            Some(old) => {
                let sum = old.try_add(&c)?;
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    self.terms.insert(exps, sum);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
        Ok(())
    }

    /// Re-expresses the polynomial over a superset of its variables.
    fn aligned_to(&self, vars: &[String]) -> Poly {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).unwrap())
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; vars.len()];
                for (i, x) in e.iter().enumerate() {
                    ne[map[i]] = *x;
                }
                (ne, c.clone())
            })
            .collect();
        Poly {
            vars: vars.to_vec(),
            terms,
        }
    }

    /// Adds `var` to the variable list without changing the value.
    pub fn with_var(&self, var: &str) -> Poly {
        self.aligned_to(&merge_vars(&self.vars, &[var.to_string()]))
    }

    /// Drops variables that appear with exponent zero everywhere.
    pub fn compact(&self) -> Poly {
        let used: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect();
        let keep: Vec<usize> = used.iter().map(|v| self.var_index(v).unwrap()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone()))
            .collect();
        Poly { vars: used, terms }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        let vars = merge_vars(&self.vars, &other.vars);
        let mut out = self.aligned_to(&vars);
        for (e, c) in other.aligned_to(&vars).terms {
            out.add_term(e, c)?;
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        let vars = merge_vars(&self.vars, &other.vars);
        let a = self.aligned_to(&vars);
        let b = other.aligned_to(&vars);
        let mut out = Poly {
            vars,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> Poly {
        if c.is_zero() {
            return Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rational) -> Poly {
        self.scale(&ExactScalar::from(r.clone()))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&[u32], &ExactScalar) -> ExactScalar) -> Poly {
        let mut out = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let v = f(e, c);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn exponent(&self, exps: &[u32], var: &str) -> u32 {
        self.var_index(var).map_or(0, |i| exps[i])
    }

    pub fn derivative(&self, var: &str) -> Poly {
        let Some(i) = self.var_index(var) else {
            return Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        };
        let mut out = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.terms
                .insert(ne, c.mul_rat(&Rational::from_integer(e[i].into())));
        }
        out
    }

    pub fn nth_derivative(&self, var: &str, n: u32) -> Poly {
        (0..n).fold(self.clone(), |p, _| p.derivative(var))
    }

    /// Scales each monomial by its total degree in `vars`.
    pub fn euler_apply(&self, vars: &[&str]) -> Poly {
        self.map_coeffs(|e, c| c.mul_rat(&Rational::from_integer(self.degree_in(e, vars).into())))
    }

    /// Total degree of the monomial `exps` restricted to `vars`.
    pub fn degree_in(&self, exps: &[u32], vars: &[&str]) -> u64 {
        vars.iter().map(|v| self.exponent(exps, v) as u64).sum()
    }

    /// Multiplies by `var^k`.
    pub fn mul_var(&self, var: &str, k: u32) -> Poly {
        let p = self.with_var(var);
        let i = p.var_index(var).unwrap();
        let terms = p
            .terms
            .into_iter()
            .map(|(mut e, c)| {
                e[i] += k;
                (e, c)
            })
            .collect();
        Poly {
            vars: p.vars,
            terms,
        }
    }

    /// Highest power of `var`; `None` for the zero polynomial.
    pub fn degree(&self, var: &str) -> Option<u32> {
        let i = self.var_index(var);
        self.terms.keys().map(|e| i.map_or(0, |i| e[i])).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, var: &str, k: u32) -> Poly {
        let Some(i) = self.var_index(var) else {
            return if k == 0 { self.clone() } else { Poly::zero() };
        };
        let mut vars = self.vars.clone();
        vars.remove(i);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] == k)
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne.remove(i);
                (ne, c.clone())
            })
            .collect();
        Poly { vars, terms }
    }

    /// Drops every term with `var`-degree above `max`.
    pub fn truncate_var(&self, var: &str, max: u32) -> Poly {
        let Some(i) = self.var_index(var) else {
            return self.clone();
        };
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] <= max)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Replaces `var` by the polynomial `value` and expands.
    pub fn substitute(&self, var: &str, value: &Poly) -> Result<Poly> {
        let Some(i) = self.var_index(var) else {
            return Ok(self.clone());
        };
        let mut rest_vars = self.vars.clone();
        rest_vars.remove(i);
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().try_mul(value)?;
                powers.push(next);
            }
            let mut ne = e.clone();
            ne.remove(i);
            let mono = Poly {
                vars: rest_vars.clone(),
                terms: BTreeMap::from([(ne, c.clone())]),
            };
            out = out.try_add(&mono.try_mul(&powers[k])?)?;
        }
        Ok(out)
    }

    /// Taylor shift `var → var + c`; `c` must not involve `var`.
    pub fn shift_var(&self, var: &str, c: &Poly) -> Result<Poly> {
        if c.degree(var).unwrap_or(0) > 0 {
            return Err(Error::Param(format!("shift amount involves {var}")));
        }
        self.substitute(var, &Poly::var(var).try_add(c)?)
    }

    pub fn rename_var(&self, from: &str, to: &str) -> Poly {
        if from == to || self.var_index(from).is_none() {
            return self.clone();
        }
        let renamed = Poly::var(to);
        self.substitute(from, &renamed)
            .expect("renaming cannot mix pi powers")
    }

    /// Evaluates `var` at a rational value.
    pub fn eval(&self, var: &str, value: &Rational) -> Poly {
        self.substitute(var, &Poly::from_rational(value.clone()))
            .expect("rational substitution")
    }

    /// Constant term when the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|x| *x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Coefficient of the monomial given by `(var, exponent)` pairs; absent
    /// variables have exponent zero.
    pub fn coeff(&self, powers: &[(&str, u32)]) -> ExactScalar {
        if powers
            .iter()
            .any(|(v, e)| *e > 0 && self.var_index(v).is_none())
        {
            return ExactScalar::zero();
        }
        let mut e = vec![0u32; self.vars.len()];
        for (v, k) in powers {
            if let Some(i) = self.var_index(v) {
                e[i] = *k;
            }
        }
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// True when every coefficient is rational (no residual √π).
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.sqrt_pi_pow() == 0)
    }

    pub fn leading_coeff(&self, var: &str) -> Option<Poly> {
        self.degree(var).map(|d| self.coeff_of(var, d))
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        let vars = merge_vars(&self.vars, &other.vars);
        self.aligned_to(&vars).terms == other.aligned_to(&vars).terms
    }
}

impl Eq for Poly {}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&ExactScalar::from_int(-1))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl From<ExactScalar> for Poly {
    fn from(c: ExactScalar) -> Self {
        Poly::constant(c)
    }
}

impl From<Rational> for Poly {
    fn from(r: Rational) -> Self {
        Poly::from_rational(r)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Shorthand for a univariate polynomial in `var` with rational coefficients,
/// given as `(exponent, numerator, denominator)` triples.
pub fn poly_from_triples(var: &str, triples: &[(u32, i64, i64)]) -> Poly {
    let mut p = Poly::zero();
    for &(e, n, d) in triples {
        p = &p + &Poly::monomial(ExactScalar::from(crate::scalar::rat(n, d)), &[(var, e)]);
    }
    p
}

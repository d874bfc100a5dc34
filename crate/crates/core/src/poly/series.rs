//! Truncated power series in a formal parameter (λ) with polynomial coefficients.

use std::fmt;

use num_traits::Zero;

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::{int, ExactScalar, Rational};

/// `Σ_{k ≤ order} coeffs[k] λ^k`, exact through `λ^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSeries {
    coeffs: Vec<Poly>,
}

impl CoeffSeries {
    pub fn new(coeffs: Vec<Poly>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series holds at least the constant term"
        );
        CoeffSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        CoeffSeries {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn constant(p: Poly, order: usize) -> Self {
        let mut s = CoeffSeries::zero(order);
        s.coeffs[0] = p;
        s
    }

    /// `p · λ^k`, truncated to `order`.
    pub fn monomial(p: Poly, k: usize, order: usize) -> Self {
        let mut s = CoeffSeries::zero(order);
        if k <= order {
            s.coeffs[k] = p;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> CoeffSeries {
        assert!(order <= self.order(), "cannot raise truncation order");
        CoeffSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn try_add(&self, other: &CoeffSeries) -> Result<CoeffSeries> {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| self.coeffs[k].try_add(&other.coeffs[k]))
            .collect::<Result<_>>()?;
        Ok(CoeffSeries { coeffs })
    }

    pub fn add(&self, other: &CoeffSeries) -> CoeffSeries {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &CoeffSeries) -> CoeffSeries {
        self.add(&other.scale(&ExactScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &ExactScalar) -> CoeffSeries {
        CoeffSeries {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn map(&self, f: impl FnMut(&Poly) -> Poly) -> CoeffSeries {
        CoeffSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Cauchy product truncated to the smaller of the two orders.
    pub fn try_product(&self, other: &CoeffSeries) -> Result<CoeffSeries> {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Poly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        Ok(CoeffSeries { coeffs })
    }

    /// `d/dλ`; the result is valid through one order less.
    pub fn derivative(&self) -> CoeffSeries {
        if self.order() == 0 {
            return CoeffSeries::zero(0);
        }
        let coeffs = (0..self.order())
            .map(|k| self.coeffs[k + 1].scale_rat(&int(k as i64 + 1)))
            .collect();
        CoeffSeries { coeffs }
    }

    /// `exp(self)` for a series without constant term, via `n E_n = Σ k A_k E_{n−k}`.
    pub fn exp(&self) -> Result<CoeffSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Expansion(
                "series has a nonzero constant term".into(),
            ));
        }
        let n = self.order();
        let mut e = vec![Poly::one()];
        for m in 1..=n {
            let mut acc = Poly::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let term = self.coeffs[k].try_mul(&e[m - k])?.scale_rat(&int(k as i64));
                acc = acc.try_add(&term)?;
            }
            e.push(acc.scale_rat(&Rational::new(1.into(), (m as i64).into())));
        }
        Ok(CoeffSeries { coeffs: e })
    }

    /// Rescales coefficient k by `f(k)`.
    pub fn rescale(&self, mut f: impl FnMut(usize) -> Rational) -> CoeffSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let r = f(k);
                if r.is_zero() {
                    Poly::zero()
                } else {
                    p.scale_rat(&r)
                }
            })
            .collect();
        CoeffSeries { coeffs }
    }
}

/// Truncated Cauchy product.
pub fn series_product(a: &CoeffSeries, b: &CoeffSeries) -> CoeffSeries {
    a.try_product(b).unwrap_or_else(|e| panic!("{e}"))
}

impl CoeffSeries {
    pub fn product(&self, other: &CoeffSeries) -> CoeffSeries {
        series_product(self, other)
    }
}

impl fmt::Display for CoeffSeries {
    /// `(c0) + (c1) lambda + (c2) lambda^2 + O(lambda^{n+1})`, skipping zero coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c}) lambda")?,
                _ => write!(f, "({c}) lambda^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(lambda^{})", self.order() + 1)
    }
}

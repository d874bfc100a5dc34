//! Text, LaTeX and JSON rendering of [`Poly`].
//!
//! Terms are listed in graded lexicographic order, highest first.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub num: String,
    pub den: String,
    pub sqrt_pi_pow: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

fn pi_text(p: i32) -> Option<String> {
    match p {
        0 => None,
        1 => Some("pi^(1/2)".into()),
        2 => Some("pi".into()),
        p if p % 2 == 0 => Some(format!("pi^({})", p / 2)),
        p => Some(format!("pi^({p}/2)")),
    }
}

fn pi_latex(p: i32) -> Option<String> {
    match p.abs() {
        0 => None,
        1 => Some(r"\sqrt{\pi}".into()),
        2 => Some(r"\pi".into()),
        a if a % 2 == 0 => Some(format!(r"\pi^{{{}}}", a / 2)),
        a => Some(format!(r"\pi^{{{a}/2}}")),
    }
}

fn latex_var(name: &str) -> String {
    match name {
        "mu" | "lambda" | "alpha" | "beta" | "gamma" | "nu" => format!("\\{name}"),
        other => other.to_string(),
    }
}

impl Poly {
    /// Terms sorted by descending total degree, ties broken lexicographically.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &ExactScalar)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        ts
    }

    fn monomial_parts(&self, exps: &[u32], latex: bool) -> Vec<String> {
        self.vars
            .iter()
            .zip(exps)
            .filter(|(_, e)| **e > 0)
            .map(|(v, e)| {
                let name = if latex { latex_var(v) } else { v.clone() };
                match (*e, latex) {
                    (1, _) => name,
                    (e, false) => format!("{name}^{e}"),
                    (e, true) => format!("{name}^{{{e}}}"),
                }
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (exps, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.rat().is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut parts = Vec::new();
            let abs = c.rat().abs();
            let pi = pi_text(c.sqrt_pi_pow());
            let mono = self.monomial_parts(exps, false);
            if !abs.is_one() || (pi.is_none() && mono.is_empty()) {
                parts.push(abs.to_string());
            }
            parts.extend(pi);
            parts.extend(mono);
            out.push_str(&parts.join(" "));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (exps, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.rat().is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.rat().abs();
            let p = c.sqrt_pi_pow();
            let mut top = Vec::new();
            let mut bottom = Vec::new();
            if !abs.numer().is_one() {
                top.push(abs.numer().to_string());
            }
            if !abs.denom().is_one() {
                bottom.push(abs.denom().to_string());
            }
            if p > 0 {
                top.extend(pi_latex(p));
            } else if p < 0 {
                bottom.extend(pi_latex(p));
            }
            top.extend(self.monomial_parts(exps, true));
            if top.is_empty() {
                top.push("1".into());
            }
            let top = top.join(" ");
            if bottom.is_empty() {
                out.push_str(&top);
            } else {
                out.push_str(&format!(r"\frac{{{top}}}{{{}}}", bottom.join(" ")));
            }
        }
        out
    }

    pub fn to_json_value(&self) -> PolyJson {
        PolyJson {
            variables: self.vars.clone(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    exps: e.clone(),
                    num: c.rat().numer().to_string(),
                    den: c.rat().denom().to_string(),
                    sqrt_pi_pow: c.sqrt_pi_pow(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value())
            .expect("polynomial JSON is always serializable")
    }

    pub fn from_json_value(value: &PolyJson) -> Result<Poly> {
        let vars: Vec<&str> = value.variables.iter().map(String::as_str).collect();
        let mut terms = Vec::with_capacity(value.terms.len());
        for t in &value.terms {
            let num: BigInt = t
                .num
                .parse()
                .map_err(|_| Error::Param(format!("bad numerator `{}`", t.num)))?;
            let den: BigInt = t
                .den
                .parse()
                .map_err(|_| Error::Param(format!("bad denominator `{}`", t.den)))?;
            if den == BigInt::from(0) {
                return Err(Error::Param("zero denominator".into()));
            }
            terms.push((
                t.exps.clone(),
                ExactScalar::new(Rational::new(num, den), t.sqrt_pi_pow),
            ));
        }
        Poly::from_terms(&vars, terms)
    }

    pub fn from_json(s: &str) -> Result<Poly> {
        let value: PolyJson = serde_json::from_str(s)
            .map_err(|e| Error::Param(format!("invalid polynomial JSON: {e}")))?;
        Poly::from_json_value(&value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly_from_triples;
    use crate::scalar::{int, rat};

    #[test]
    fn text_layout() {
        let p = poly_from_triples("x", &[(4, 1, 1), (2, -6, 5), (0, 1, 5)]);
        assert_eq!(p.to_text(), "x^4 - 6/5 x^2 + 1/5");
        assert_eq!(Poly::one().to_text(), "1");
        assert_eq!(Poly::zero().to_text(), "0");
        let h = Poly::monomial(ExactScalar::one(), &[("x", 4)])
            + Poly::monomial(ExactScalar::from_int(12), &[("x", 2), ("z", 1)])
            + Poly::monomial(ExactScalar::from_int(12), &[("z", 2)]);
        assert_eq!(h.to_text(), "x^4 + 12 x^2 z + 12 z^2");
        let neg = Poly::monomial(ExactScalar::new(int(-1), 1), &[("x", 1)]);
        assert_eq!(neg.to_text(), "-pi^(1/2) x");
    }

    #[test]
    fn latex_layout() {
        let p = poly_from_triples("x", &[(4, 1, 1), (2, -6, 5), (0, 1, 5)]);
        assert_eq!(p.to_latex(), r"x^{4} - \frac{6 x^{2}}{5} + \frac{1}{5}");
        let q = Poly::monomial(ExactScalar::new(rat(3, 4), 1), &[("x", 1)]);
        assert_eq!(q.to_latex(), r"\frac{3 \sqrt{\pi} x}{4}");
        let r = Poly::constant(ExactScalar::new(int(2), -1));
        assert_eq!(r.to_latex(), r"\frac{2}{\sqrt{\pi}}");
    }

    #[test]
    fn json_round_trip() {
        let p = poly_from_triples("x", &[(10, 1, 1), (8, -45, 17), (0, -7, 2431)])
            + Poly::monomial(ExactScalar::new(rat(5, 3), -1), &[("z", 2)]);
        let s = p.to_json();
        let back = Poly::from_json(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_json(), s);
        assert!(Poly::from_json("{\"variables\":[],\"terms\":[{\"exps\":[],\"num\":\"1\",\"den\":\"0\",\"sqrt_pi_pow\":0}]}").is_err());
    }
}

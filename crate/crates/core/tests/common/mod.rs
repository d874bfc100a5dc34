//! Shared helpers for integration tests: the reference polynomial records.

#![allow(dead_code)]

use sjk_core::poly::Poly;
use sjk_core::scalar::{rat, ExactScalar};

pub const REFERENCE: &str = include_str!("../data/reference_polys.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceRow {
    pub family: String,
    pub n: u32,
    pub terms: Vec<(u32, i64, i64)>,
}

fn parse_triple(tok: &str) -> Result<(u32, i64, i64), String> {
    let inner = tok
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("malformed triple `{tok}`"))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three fields in `{tok}`"));
    }
    let e = parts[0]
        .parse()
        .map_err(|_| format!("bad exponent in `{tok}`"))?;
    let num = parts[1]
        .parse()
        .map_err(|_| format!("bad numerator in `{tok}`"))?;
    let den: i64 = parts[2]
        .parse()
        .map_err(|_| format!("bad denominator in `{tok}`"))?;
    if den <= 0 {
        return Err(format!("non-positive denominator in `{tok}`"));
    }
    Ok((e, num, den))
}

pub fn parse_reference(text: &str) -> Result<Vec<ReferenceRow>, String> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let family = toks
            .next()
            .ok_or_else(|| format!("line {}: missing family", i + 1))?
            .to_string();
        let n = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| format!("line {}: missing degree", i + 1))?;
        let terms = toks
            .map(parse_triple)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("line {}: {e}", i + 1))?;
        rows.push(ReferenceRow { family, n, terms });
    }
    Ok(rows)
}

pub fn reference_rows() -> Vec<ReferenceRow> {
    parse_reference(REFERENCE).expect("reference data parses")
}

impl ReferenceRow {
    pub fn to_poly(&self) -> Poly {
        self.terms.iter().fold(Poly::zero(), |acc, &(e, num, den)| {
            let c = ExactScalar::from(rat(num, den));
            let term = match self.family.as_str() {
                "hermite" => Poly::monomial(c, &[("x", e), ("z", (self.n - e) / 2)]),
                _ => Poly::monomial(c, &[("x", e)]),
            };
            &acc + &term
        })
    }
}

pub fn reference_poly(family: &str, n: u32) -> Poly {
    reference_rows()
        .into_iter()
        .find(|r| r.family == family && r.n == n)
        .unwrap_or_else(|| panic!("no reference row for {family} {n}"))
        .to_poly()
}

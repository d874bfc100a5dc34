//! Named invariant suites. Each suite is a list of independent checks, run
//! sequentially or in parallel, producing a pass/fail report with
//! counterexample details.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::connect::{
    biorthogonality_check, evolution_residual, exp_alpha_beta, pair_generating_functions,
    reaction_solve, reconstruct_monomial, ConnectionFamily,
};
use crate::error::{Error, Result};
use crate::families::{
    egf_beta_shifted, hermite_closed, sj_beta_rescaled, sj_beta_scale, sj_closed_beta,
    sj_closed_mm, sj_egf_coeff, sj_umbral,
};
use crate::hyper::{pochhammer_proliferate, proliferation_term, HyperSpec};
use crate::lacunary::{
    hermite_lacunary_closed, hermite_lacunary_shift, mu_slice, multisection_oracle,
    sj_lacunary_closed, sj_lacunary_shift_gen, LacunaryParams,
};
use crate::opcalc::{exp_resolvent_sj, gp_series, hermite_exp, jacobi_eigenvalue, jacobi_operator};
use crate::par::Exec;
use crate::poly::Poly;
use crate::scalar::{beta_fn, factorial, int, rat, ExactScalar, HalfInt, Rational};
use crate::umbral::{
    beta_shift_series, beta_sum_series, null_identity_series, unit_identity_series,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Table,
    Eigen,
    Constructions,
    Egf,
    Lacunary,
    Proliferation,
    Connection,
    BetaEgf,
    Umbral,
    Reaction,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Table,
        Suite::Eigen,
        Suite::Constructions,
        Suite::Egf,
        Suite::Lacunary,
        Suite::Proliferation,
        Suite::Connection,
        Suite::BetaEgf,
        Suite::Umbral,
        Suite::Reaction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table => "table",
            Suite::Eigen => "eigen",
            Suite::Constructions => "constructions",
            Suite::Egf => "egf",
            Suite::Lacunary => "lacunary",
            Suite::Proliferation => "proliferation",
            Suite::Connection => "connection",
            Suite::BetaEgf => "beta-egf",
            Suite::Umbral => "umbral",
            Suite::Reaction => "reaction",
        }
    }

    pub fn checks(self) -> Vec<Check> {
        match self {
            Suite::Table => table_checks(),
            Suite::Eigen => eigen_checks(),
            Suite::Constructions => construction_checks(30),
            Suite::Egf => egf_checks(),
            Suite::Lacunary => lacunary_checks(),
            Suite::Proliferation => proliferation_checks(),
            Suite::Connection => connection_checks(),
            Suite::BetaEgf => beta_egf_checks(),
            Suite::Umbral => umbral_checks(),
            Suite::Reaction => reaction_checks(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Param(format!("unknown suite `{s}`")))
    }
}

type CheckFn = Box<dyn Fn() -> Result<Option<String>> + Send + Sync>;

/// A single named check. `Ok(None)` is a pass; `Ok(Some(detail))` carries a
/// counterexample.
pub struct Check {
    pub label: String,
    run: CheckFn,
}

impl Check {
    pub fn new(
        label: impl Into<String>,
        run: impl Fn() -> Result<Option<String>> + Send + Sync + 'static,
    ) -> Self {
        Check {
            label: label.into(),
            run: Box::new(run),
        }
    }

    pub fn run(&self) -> Option<String> {
        match (self.run)() {
            Ok(outcome) => outcome,
            Err(e) => Some(format!("error: {e}")),
        }
    }
}

/// `None` when equal, otherwise both sides rendered.
pub fn compare<T: PartialEq + fmt::Display>(lhs: &T, rhs: &T) -> Option<String> {
    (lhs != rhs).then(|| format!("{lhs} != {rhs}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub label: String,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub total: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{}: {}/{} checks passed: {status}",
            self.suite,
            self.total - self.failures.len(),
            self.total
        )?;
        for fail in &self.failures {
            write!(f, "\n  {}: {}", fail.label, fail.detail)?;
        }
        Ok(())
    }
}

pub fn run_checks(suite: Suite, checks: Vec<Check>, exec: Exec) -> Report {
    let total = checks.len();
    let outcomes = exec.map(checks, |c| {
        c.run().map(|detail| Failure {
            label: c.label.clone(),
            detail,
        })
    });
    Report {
        suite,
        total,
        failures: outcomes.into_iter().flatten().collect(),
    }
}

pub fn run_suite(suite: Suite, exec: Exec) -> Report {
    run_checks(suite, suite.checks(), exec)
}

fn m1() -> Rational {
    int(-1)
}

fn table_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 0..=10u32 {
        out.push(Check::new(
            format!("sj resolvent = closed form, n={n}"),
            move || {
                Ok(compare(
                    &gp_series(n, &m1(), &m1())?,
                    &sj_closed_mm(n, &Rational::zero()),
                ))
            },
        ));
        out.push(Check::new(
            format!("hermite exponential = closed form, n={n}"),
            move || Ok(compare(&hermite_exp(n), &hermite_closed(n))),
        ));
    }
    out
}

fn eigen_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 0..=30u32 {
        out.push(Check::new(
            format!("(1-x^2)P'' = -n(n-1)P, n={n}"),
            move || {
                let p = gp_series(n, &m1(), &m1())?;
                let lhs = &(&Poly::one() - &Poly::var("x").pow(2)) * &p.nth_derivative("x", 2);
                let nn = int(n as i64);
                Ok(compare(&lhs, &p.scale_rat(&(-&nn * (nn.clone() - int(1))))))
            },
        ));
    }
    for beta in [int(0), rat(1, 2), int(2)] {
        for n in 0..=15u32 {
            let b = beta.clone();
            out.push(Check::new(
                format!("jacobi operator eigenvalue, beta={beta}, n={n}"),
                move || {
                    let p = sj_closed_beta(n, &b)?;
                    let ev = jacobi_eigenvalue(n, &m1(), &b);
                    let nn = int(n as i64);
                    if ev != -&nn * (&nn + &b) {
                        return Ok(Some(format!("eigenvalue {ev}")));
                    }
                    Ok(compare(&jacobi_operator(&p, &m1(), &b), &p.scale_rat(&ev)))
                },
            ));
        }
    }
    out
}

/// Resolvent series, exponential resolvent, umbral image and binomial closed
/// form agree for every `n ≤ max_n`.
pub fn construction_checks(max_n: u32) -> Vec<Check> {
    (0..=max_n)
        .map(|n| {
            Check::new(format!("four constructions agree, n={n}"), move || {
                let closed = sj_closed_mm(n, &Rational::zero());
                for (name, p) in [
                    ("resolvent", gp_series(n, &m1(), &m1())?),
                    ("exponential", exp_resolvent_sj(n)?),
                    ("umbral", sj_umbral(n)?),
                ] {
                    if let Some(d) = compare(&p, &closed) {
                        return Ok(Some(format!("{name}: {d}")));
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

fn egf_checks() -> Vec<Check> {
    (0..=12u32)
        .map(|n| {
            Check::new(
                format!("double-sum coefficient = P_N/N!, N={n}"),
                move || {
                    let f = Rational::new(One::one(), factorial(n as u64));
                    Ok(compare(
                        &sj_egf_coeff(n)?,
                        &sj_closed_mm(n, &Rational::zero()).scale_rat(&f),
                    ))
                },
            )
        })
        .collect()
}

fn sj_source(n: u32) -> Result<Poly> {
    Ok(sj_closed_mm(n, &Rational::zero()))
}

fn hermite_source(n: u32) -> Result<Poly> {
    Ok(hermite_closed(n))
}

fn lacunary_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for k in 2..=4u32 {
        out.push(Check::new(
            format!("hermite closed form = oracle, K={k}"),
            move || {
                let oracle = multisection_oracle(hermite_source, LacunaryParams::new(k, 0, 5)?)?;
                Ok(compare(&hermite_lacunary_closed(k, 5)?, &oracle))
            },
        ));
        out.push(Check::new(
            format!("sj closed form = oracle, K={k}"),
            move || {
                let oracle = multisection_oracle(sj_source, LacunaryParams::new(k, 0, 4)?)?;
                Ok(compare(&sj_lacunary_closed(k, 4)?, &oracle))
            },
        ));
        out.push(Check::new(
            format!("hermite shifted generator slices, K={k}"),
            move || {
                let gen = hermite_lacunary_shift(k, 3, 4)?;
                for l in 0..=3 {
                    let oracle =
                        multisection_oracle(hermite_source, LacunaryParams::new(k, l, 4)?)?;
                    if let Some(d) = compare(&mu_slice(&gen, l), &oracle) {
                        return Ok(Some(format!("L={l}: {d}")));
                    }
                }
                Ok(None)
            },
        ));
        out.push(Check::new(
            format!("sj shifted generator slices, K={k}"),
            move || {
                let gen = sj_lacunary_shift_gen(k, 3, 3)?;
                for l in 0..=3 {
                    let oracle = multisection_oracle(sj_source, LacunaryParams::new(k, l, 3)?)?;
                    if let Some(d) = compare(&mu_slice(&gen, l), &oracle) {
                        return Ok(Some(format!("L={l}: {d}")));
                    }
                }
                Ok(None)
            },
        ));
    }
    out
}

/// An admissible case `(α, β, r, s, upper, lower)`.
pub type ProliferationCase = (HalfInt, HalfInt, u32, u32, Vec<Rational>, Vec<Rational>);

/// Deterministic admissible cases on a grid.
pub fn proliferation_cases() -> Vec<ProliferationCase> {
    (0..20i64)
        .map(|i| {
            let alpha = HalfInt::from_twice(1 + (i * 7) % 11);
            let beta = HalfInt::from_twice(1 + (i * 5) % 9);
            let r = 1 + (i % 3) as u32;
            let s = 1 + ((i / 3) % 3) as u32;
            let upper = (0..i % 3)
                .map(|j| rat(1 + (i + j) % 6, 1 + j % 3))
                .collect();
            let lower = (0..(i / 2) % 3)
                .map(|j| rat(1 + (2 * i + j) % 5, 2 + j))
                .collect();
            (alpha, beta, r, s, upper, lower)
        })
        .collect()
}

fn proliferation_checks() -> Vec<Check> {
    proliferation_cases()
        .into_iter()
        .map(|(a, b, r, s, up, low)| {
            let label = format!("alpha={a} beta={b} r={r} s={s}");
            Check::new(label, move || {
                let f = HyperSpec::new(up.clone(), low.clone(), ExactScalar::one())?;
                let (pre, g) = pochhammer_proliferate(a, b, r, s, &f)?;
                for m in 0..=8u64 {
                    if let Some(d) = compare(
                        &(&pre * &g.coeff(m)),
                        &proliferation_term(a, b, r, s, &f, m)?,
                    ) {
                        return Ok(Some(format!("m={m}: {d}")));
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

fn connection_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for family in [ConnectionFamily::SjMm, ConnectionFamily::Hermite] {
        for m in 0..=20u32 {
            out.push(Check::new(
                format!("{family} reconstructs x^{m}"),
                move || {
                    Ok(compare(
                        &reconstruct_monomial(m, family)?,
                        &Poly::var("x").pow(m),
                    ))
                },
            ));
        }
        for m in 0..=12u32 {
            out.push(Check::new(
                format!("{family} biorthogonality row M={m}"),
                move || {
                    for l in 0..=12u32 {
                        let want = if m == l { Poly::one() } else { Poly::zero() };
                        if let Some(d) = compare(&biorthogonality_check(m, l, family)?, &want) {
                            return Ok(Some(format!("L={l}: {d}")));
                        }
                    }
                    Ok(None)
                },
            ));
        }
        out.push(Check::new(
            format!("{family} gaussian pairing = exp(alpha beta)"),
            move || {
                Ok(compare(
                    &pair_generating_functions(family, 6)?,
                    &exp_alpha_beta(6),
                ))
            },
        ));
    }
    out
}

fn beta_egf_checks() -> Vec<Check> {
    [HalfInt::ZERO, HalfInt::HALF]
        .into_iter()
        .map(|beta| {
            Check::new(format!("tricomi product series, beta={beta}"), move || {
                let s = egf_beta_shifted(6, beta)?;
                for n in 0..=6u32 {
                    let c = s
                        .coeff(n as usize)
                        .scale_rat(&Rational::from_integer(factorial(n as u64)));
                    if let Some(d) = compare(&c, &sj_beta_rescaled(n + 1, beta)?) {
                        return Ok(Some(format!("n={n}: {d}")));
                    }
                    let scale = sj_beta_scale(n + 1, beta)
                        .recip()
                        .ok_or(Error::Internal("zero rescaling".into()))?;
                    let monic = c.scale(&scale);
                    if monic.terms().any(|(_, v)| v.sqrt_pi_pow() != 0) {
                        return Ok(Some(format!("n={n}: residual pi power in {monic}")));
                    }
                    if let Some(d) = compare(&monic, &sj_closed_beta(n + 1, &beta.to_rational())?) {
                        return Ok(Some(format!("n={n} monic: {d}")));
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

fn umbral_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for n in [HalfInt::HALF, HalfInt::from_twice(3), HalfInt::int(2)] {
        out.push(Check::new(format!("unit identity, N={n}"), move || {
            Ok(compare(
                &unit_identity_series(n).itransform_poly()?,
                &Poly::one(),
            ))
        }));
        for p in 1..=3u32 {
            out.push(Check::new(
                format!("null identity, N={n}, p={p}"),
                move || {
                    Ok(compare(
                        &null_identity_series(n, p)?.itransform_poly()?,
                        &Poly::zero(),
                    ))
                },
            ));
        }
    }
    let admissible = [
        HalfInt::HALF,
        HalfInt::ONE,
        HalfInt::from_twice(3),
        HalfInt::from_twice(5),
    ];
    for a in admissible {
        for b in admissible {
            out.push(Check::new(
                format!("beta towers, a={a}, b={b}"),
                move || {
                    let base = Poly::constant(beta_fn(a, b)?);
                    let pascal =
                        Poly::constant(&beta_fn(a.shift(1), b)? + &beta_fn(a, b.shift(1))?);
                    if let Some(d) = compare(&pascal, &base) {
                        return Ok(Some(format!("pascal: {d}")));
                    }
                    for n in 0..=6u32 {
                        let shifted = Poly::constant(beta_fn(a, b.shift(n as i64))?);
                        if let Some(d) =
                            compare(&beta_shift_series(a, b, n)?.itransform_poly()?, &shifted)
                        {
                            return Ok(Some(format!("shift n={n}: {d}")));
                        }
                        if let Some(d) =
                            compare(&beta_sum_series(a, b, n)?.itransform_poly()?, &base)
                        {
                            return Ok(Some(format!("sum n={n}: {d}")));
                        }
                    }
                    Ok(None)
                },
            ));
        }
    }
    out
}

fn reaction_checks() -> Vec<Check> {
    (0..=8u32)
        .map(|n0| {
            Check::new(format!("evolution equation, N0={n0}"), move || {
                let p = reaction_solve(n0, 6)?;
                if let Some(d) = compare(p.coeff(0), &Poly::var("x").pow(n0)) {
                    return Ok(Some(format!("initial value: {d}")));
                }
                for (k, r) in evolution_residual(&p).iter().enumerate() {
                    if !r.is_zero() {
                        return Ok(Some(format!("t^{k}: residual {r}")));
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

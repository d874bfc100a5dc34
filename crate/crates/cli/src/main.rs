//! `sjk`: polynomials, generating functions, connection coefficients and
//! verification suites in exact arithmetic.
//!
//! Exit codes: 0 on success, 1 on usage or parameter errors, 2 when a
//! verification or `--check` fails.

mod output;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use sjk_core::connect::{
    evolution_residual, reaction_solve, reconstruct_monomial, ConnectionFamily,
};
use sjk_core::families::{egf_beta_shifted, hermite_egf, sj_egf, Family};
use sjk_core::families::{hermite_closed, sj_closed_mm, sj_umbral};
use sjk_core::lacunary::{
    hermite_lacunary_closed, hermite_lacunary_shift, mu_slice, multisection_oracle,
    sj_lacunary_closed, sj_lacunary_shift_gen, LacunaryParams,
};
use sjk_core::opcalc::{exp_resolvent_sj, gp_series, hermite_exp};
use sjk_core::par::{with_jobs, Exec};
use sjk_core::poly::{CoeffSeries, Poly};
use sjk_core::scalar::{int, parse_rational, HalfInt, Rational};
use sjk_core::verify::{run_suite, Suite};

use output::Format;

const MAX_ORDER_VAR: &str = "SJK_MAX_ORDER";
const DEFAULT_MAX_ORDER: u32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "sjk",
    version,
    about = "Exact Sobolev-Jacobi and Hermite polynomial toolkit"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// Sobolev-Jacobi at alpha = beta = -1.
    Sj,
    /// Sobolev-Jacobi at alpha = -1, beta > -1.
    SjBeta,
    /// Monic classical Jacobi, alpha, beta > -1.
    Jacobi,
    /// Two-variable Hermite H_n(x, z).
    Hermite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    /// Terminating resolvent series of the Jacobi operator.
    Resolvent,
    /// Exponential of a lowering operator applied to x^n.
    Exponential,
    /// Image of H_n under the integral transform.
    Umbral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LacunaryFamily {
    Sj,
    Hermite,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Print one polynomial.
    Poly {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        alpha: Option<Rational>,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        beta: Option<Rational>,
        /// Free constant in the degree-1 SJ polynomial.
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        gamma: Option<Rational>,
    },
    /// Print an exponential generating function truncated at lambda^order.
    Egf {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        order: u32,
        /// For sj-beta: the 1-shifted series of the rescaled polynomials.
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        beta: Option<Rational>,
    },
    /// Print the lacunary generating function sum_n lambda^n/n! p_{Kn+L}.
    Lacunary {
        #[arg(long, value_enum)]
        family: LacunaryFamily,
        #[arg(long = "K")]
        k: u32,
        #[arg(long = "L", default_value_t = 0)]
        l: u32,
        #[arg(long)]
        order: u32,
        /// Compare the closed form against direct index selection.
        #[arg(long)]
        check: bool,
    },
    /// Connection coefficients of x^M in the family basis.
    Connect {
        #[arg(long, value_enum)]
        family: LacunaryFamily,
        #[arg(long = "M")]
        m: u32,
        /// A single coefficient instead of the whole row.
        #[arg(long)]
        n: Option<u32>,
        /// Print sum_n A_{M,n} P_n, which equals x^M.
        #[arg(long)]
        reconstruct: bool,
    },
    /// Run named invariant suites (all when none are given).
    Verify {
        suites: Vec<String>,
        /// Worker threads; 1 runs sequentially.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Solve dP/dt = (1 - x^2) P'' from P(0) = x^N0 as a series in t.
    React {
        #[arg(long = "N0")]
        n0: u32,
        #[arg(long)]
        order: u32,
        /// Check the evolution equation order by order.
        #[arg(long)]
        check: bool,
    },
    /// Print polynomials for n = 0..=max.
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        max: u32,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        alpha: Option<Rational>,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        beta: Option<Rational>,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(sjk_core::Error),
    Verification(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "error: {e}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<sjk_core::Error> for CliError {
    fn from(e: sjk_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a verb prints, and whether it counts as a failed check.
struct Outcome {
    stdout: String,
    failed: Option<String>,
}

impl From<String> for Outcome {
    fn from(stdout: String) -> Self {
        Outcome {
            stdout,
            failed: None,
        }
    }
}

fn max_order() -> CliResult<u32> {
    match std::env::var(MAX_ORDER_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{MAX_ORDER_VAR} must be a non-negative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn cap(name: &str, value: u64, limit: u32) -> CliResult<()> {
    if value > limit as u64 {
        return Err(CliError::Usage(format!(
            "{name} = {value} exceeds {MAX_ORDER_VAR} = {limit}"
        )));
    }
    Ok(())
}

fn require(name: &str, v: Option<Rational>) -> CliResult<Rational> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required for this family")))
}

fn family_of(
    arg: FamilyArg,
    alpha: Option<Rational>,
    beta: Option<Rational>,
    gamma: Option<Rational>,
) -> CliResult<Family> {
    Ok(match arg {
        FamilyArg::Sj => Family::SjMm {
            gamma: gamma.unwrap_or_else(|| int(0)),
        },
        FamilyArg::SjBeta => Family::SjBeta {
            beta: require("beta", beta)?,
        },
        FamilyArg::Jacobi => Family::JacobiClassical {
            alpha: require("alpha", alpha)?,
            beta: require("beta", beta)?,
        },
        FamilyArg::Hermite => Family::Hermite2,
    })
}

fn poly_by_method(family: &Family, n: u32, method: Method) -> CliResult<Poly> {
    let m1 = int(-1);
    let unsupported =
        || CliError::Usage(format!("method {method:?} is not available for {family}"));
    match (method, family) {
        (Method::Closed, f) => Ok(f.poly(n)?),
        (Method::Resolvent, Family::SjMm { gamma }) if gamma == &int(0) => {
            Ok(gp_series(n, &m1, &m1)?)
        }
        (Method::Resolvent, Family::SjBeta { beta }) => Ok(gp_series(n, &m1, beta)?),
        (Method::Resolvent, Family::JacobiClassical { alpha, beta }) => {
            Ok(gp_series(n, alpha, beta)?)
        }
        (Method::Exponential, Family::SjMm { gamma }) if gamma == &int(0) => {
            Ok(exp_resolvent_sj(n)?)
        }
        (Method::Exponential, Family::Hermite2) => Ok(hermite_exp(n)),
        (Method::Umbral, Family::SjMm { gamma }) if gamma == &int(0) => Ok(sj_umbral(n)?),
        _ => Err(unsupported()),
    }
}

fn half_int(beta: &Rational) -> CliResult<HalfInt> {
    HalfInt::from_rational(beta).ok_or_else(|| {
        CliError::Usage(format!(
            "beta must be an integer or half-integer for this series, got {beta}"
        ))
    })
}

fn egf(family: FamilyArg, order: u32, beta: Option<Rational>) -> CliResult<CoeffSeries> {
    Ok(match family {
        FamilyArg::Sj => sj_egf(order)?.map(|p| p.eval("y", &int(1))),
        FamilyArg::Hermite => hermite_egf(order),
        FamilyArg::SjBeta => egf_beta_shifted(order, half_int(&require("beta", beta)?)?)?,
        FamilyArg::Jacobi => {
            return Err(CliError::Usage(
                "no generating function for the classical Jacobi family".into(),
            ))
        }
    })
}

fn lacunary_closed(family: LacunaryFamily, p: LacunaryParams) -> CliResult<CoeffSeries> {
    Ok(match (family, p.l) {
        (LacunaryFamily::Sj, 0) => sj_lacunary_closed(p.k, p.order)?,
        (LacunaryFamily::Hermite, 0) => hermite_lacunary_closed(p.k, p.order)?,
        (LacunaryFamily::Sj, l) => mu_slice(&sj_lacunary_shift_gen(p.k, l, p.order)?, l),
        (LacunaryFamily::Hermite, l) => mu_slice(&hermite_lacunary_shift(p.k, l, p.order)?, l),
    })
}

fn lacunary_oracle(family: LacunaryFamily, p: LacunaryParams) -> CliResult<CoeffSeries> {
    Ok(match family {
        LacunaryFamily::Sj => multisection_oracle(|n| Ok(sj_closed_mm(n, &int(0))), p)?,
        LacunaryFamily::Hermite => multisection_oracle(|n| Ok(hermite_closed(n)), p)?,
    })
}

fn connection_family(f: LacunaryFamily) -> ConnectionFamily {
    match f {
        LacunaryFamily::Sj => ConnectionFamily::SjMm,
        LacunaryFamily::Hermite => ConnectionFamily::Hermite,
    }
}

fn run_verify(names: &[String], jobs: usize, format: Format) -> CliResult<Outcome> {
    let suites = if names.is_empty() {
        Suite::ALL.to_vec()
    } else {
        names
            .iter()
            .map(|s| s.parse::<Suite>())
            .collect::<Result<Vec<_>, _>>()?
    };
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let exec = if jobs > 1 {
        Exec::Parallel
    } else {
        Exec::Sequential
    };
    let reports = with_jobs(jobs, || {
        suites
            .iter()
            .map(|&s| run_suite(s, exec))
            .collect::<Vec<_>>()
    });
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.suite.name())
        .collect();
    let stdout = match format {
        Format::Text => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
        Format::Json => serde_json::Value::Array(
            reports
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite.name(),
                        "total": r.total,
                        "passed": r.passed(),
                        "failures": r.failures.iter().map(|f| json!({"label": f.label, "detail": f.detail})).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
        .to_string(),
        Format::Latex => return Err(CliError::Usage("verify supports text and json output".into())),
    };
    let failed = (!failed.is_empty()).then(|| failed.join(", "));
    Ok(Outcome { stdout, failed })
}

fn run(cli: Cli) -> CliResult<Outcome> {
    let limit = max_order()?;
    let format = cli.format;
    match cli.verb {
        Verb::Poly {
            family,
            n,
            method,
            alpha,
            beta,
            gamma,
        } => {
            cap("n", n as u64, limit)?;
            let family = family_of(family, alpha, beta, gamma)?;
            Ok(output::poly(&poly_by_method(&family, n, method)?, format).into())
        }
        Verb::Egf {
            family,
            order,
            beta,
        } => {
            cap("order", order as u64, limit)?;
            Ok(output::series(&egf(family, order, beta)?, "lambda", format).into())
        }
        Verb::Lacunary {
            family,
            k,
            l,
            order,
            check,
        } => {
            cap("order", order as u64, limit)?;
            cap("K*order+L", k as u64 * order as u64 + l as u64, limit)?;
            let params = LacunaryParams::new(k, l, order)?;
            let closed = lacunary_closed(family, params)?;
            if !check {
                return Ok(output::series(&closed, "lambda", format).into());
            }
            let pass = closed == lacunary_oracle(family, params)?;
            let stdout = format!(
                "closed-form == oracle: {}",
                if pass { "PASS" } else { "FAIL" }
            );
            Ok(Outcome {
                stdout,
                failed: (!pass).then(|| format!("lacunary K={k} L={l} order={order}")),
            })
        }
        Verb::Connect {
            family,
            m,
            n,
            reconstruct,
        } => {
            cap("M", m as u64, limit)?;
            let family = connection_family(family);
            if reconstruct {
                return Ok(output::poly(&reconstruct_monomial(m, family)?, format).into());
            }
            match n {
                Some(n) => Ok(output::poly(&family.coeff(m, n)?, format).into()),
                None => {
                    let row = (0..=m)
                        .map(|n| Ok((n, family.coeff(m, n)?)))
                        .collect::<CliResult<Vec<_>>>()?;
                    Ok(output::rows("n", &row, format).into())
                }
            }
        }
        Verb::Verify { suites, jobs } => run_verify(&suites, jobs, format),
        Verb::React { n0, order, check } => {
            cap("N0", n0 as u64, limit)?;
            cap("order", order as u64, limit)?;
            let p = reaction_solve(n0, order)?;
            if check {
                let bad = evolution_residual(&p).iter().position(|r| !r.is_zero());
                let pass = bad.is_none() && p.coeff(0) == &Poly::var("x").pow(n0);
                let stdout = format!("evolution equation: {}", if pass { "PASS" } else { "FAIL" });
                return Ok(Outcome {
                    stdout,
                    failed: (!pass).then(|| format!("first failing t-order: {bad:?}")),
                });
            }
            Ok(output::series(&p, "t", format).into())
        }
        Verb::Table {
            family,
            max,
            alpha,
            beta,
        } => {
            cap("max", max as u64, limit)?;
            let family = family_of(family, alpha, beta, None)?;
            let rows = (0..=max)
                .map(|n| Ok((n, family.poly(n)?)))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(output::rows("n", &rows, format).into())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{}", out.stdout);
            match out.failed {
                Some(detail) => {
                    eprintln!("{}", CliError::Verification(detail));
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

//! The `hkdet` command line.
//!
//! Data goes to standard output, diagnostics to standard error. Exit codes:
//! 0 success, 1 verification failure, 2 usage error, 3 work budget exhausted.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::budget::{WorkBudget, DEFAULT_WORK_BUDGET};
use crate::closedforms::{hk_closed, mq_closed, nq_col_bounded_closed};
use crate::error::Error;
use crate::polyfit::{interpolate_hk_checked, RationalRepr, EXTRA_CHECKS};
use crate::staircase::{count_oracle, count_oracle_matrix, Bound, CountKind, CountSpec};
use crate::verify::{self, Limits, Suite, VerifyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable read when `--work-budget` is absent.
pub const WORK_BUDGET_ENV: &str = "HKDET_WORK_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "hkdet",
    version,
    about = "Generalized Hilbert-Kunz function of 2x2 determinantal rings"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate HK(q) for an m x n generic matrix.
    Hk(HkArgs),
    /// Count staircase monomials for an N_q or M_q specification.
    Count(CountArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Fit HK(q) by an exact polynomial in q.
    Fit(FitArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("qs").required(true).args(["q", "q_range"]))]
struct HkArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: Option<u64>,
    /// Inclusive range A:B.
    #[arg(long, value_name = "A:B")]
    q_range: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Nq,
    Mq,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    OracleMargins,
    OracleMatrix,
}

#[derive(Debug, Args)]
struct BudgetArg {
    /// Maximum enumeration steps for oracle methods.
    #[arg(long, env = WORK_BUDGET_ENV, default_value_t = DEFAULT_WORK_BUDGET)]
    work_budget: u64,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u64,
    /// Row bounds: one value for all rows or a comma-separated list; naturals
    /// or "inf". Defaults to inf for nq and q-1 for mq.
    #[arg(long)]
    rows: Option<String>,
    /// Column bounds, same syntax as --rows.
    #[arg(long)]
    cols: Option<String>,
    #[arg(long, value_enum, default_value = "closed")]
    method: Method,
    #[command(flatten)]
    budget: BudgetArg,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    max_m: Option<u32>,
    #[arg(long)]
    max_n: Option<u32>,
    #[arg(long)]
    max_q: Option<u64>,
    #[command(flatten)]
    budget: BudgetArg,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    /// Verify the fit against HK(q) for every q up to this value
    /// (at least m + n + 10).
    #[arg(long)]
    check_upto: Option<u64>,
}

/// Outcome of a subcommand other than success.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verify(String),
    Budget(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::WorkBudgetExhausted { .. } => Failure::Budget(e.to_string()),
            Error::NotPolynomial { .. } | Error::DegreeMismatch { .. } => {
                Failure::Verify(e.to_string())
            }
            Error::Domain(_) => Failure::Usage(e.to_string()),
        }
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Hk(a) => cmd_hk(a, out),
        Command::Count(a) => cmd_count(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Fit(a) => cmd_fit(a, out),
    };
    let (code, msg) = match result {
        Ok(()) => return EXIT_OK,
        Err(Failure::Usage(m)) => (EXIT_USAGE, format!("error: {m}")),
        Err(Failure::Verify(m)) => (EXIT_VERIFY_FAILED, format!("verification failed: {m}")),
        Err(Failure::Budget(m)) => (EXIT_BUDGET, format!("resource limit: {m}")),
        Err(Failure::Io(e)) => (EXIT_VERIFY_FAILED, format!("i/o error: {e}")),
    };
    let _ = writeln!(err, "{msg}");
    code
}

#[derive(Debug, Serialize)]
struct HkRecord {
    m: u32,
    n: u32,
    q: u64,
    hk: String,
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::Usage(format!("invalid --q-range {s:?}: expected A:B with A <= B"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn require_dims(m: u32, n: u32) -> Result<(), Failure> {
    if m == 0 || n == 0 {
        return Err(Failure::Usage(format!(
            "m and n must be positive, got m={m} n={n}"
        )));
    }
    Ok(())
}

fn cmd_hk(a: HkArgs, out: &mut dyn Write) -> Result<(), Failure> {
    require_dims(a.m, a.n)?;
    let (lo, hi) = match (a.q, a.q_range.as_deref()) {
        (Some(q), None) => (q, q),
        (None, Some(r)) => parse_range(r)?,
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --q and --q-range".into(),
            ))
        }
    };
    let records: Vec<HkRecord> = (lo..=hi)
        .map(|q| HkRecord {
            m: a.m,
            n: a.n,
            q,
            hk: hk_closed(a.m, a.n, q).to_string(),
        })
        .collect();
    write_records(&records, a.format, out)
}

fn write_records<T: Serialize>(
    records: &[T],
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(true)
                .from_writer(Vec::new());
            for r in records {
                w.serialize(r)
                    .map_err(|e| Failure::Io(std::io::Error::other(e)))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Failure::Io(std::io::Error::other(e.to_string())))?;
            out.write_all(&bytes)?;
        }
        Format::Json => {
            let s = serde_json::to_string_pretty(records)
                .map_err(|e| Failure::Io(std::io::Error::other(e)))?;
            writeln!(out, "{s}")?;
        }
    }
    Ok(())
}

fn parse_bounds(
    text: Option<&str>,
    len: u32,
    default: Bound,
    what: &str,
) -> Result<Vec<Bound>, Failure> {
    let len = len as usize;
    let Some(text) = text else {
        return Ok(vec![default; len]);
    };
    let parts = text
        .split(',')
        .map(str::parse::<Bound>)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("--{what}: {e}")))?;
    match parts.len() {
        1 => Ok(vec![parts[0]; len]),
        k if k == len => Ok(parts),
        k => Err(Failure::Usage(format!(
            "--{what} has {k} entries, expected 1 or {len}"
        ))),
    }
}

/// The closed form covering `spec`, if there is one.
fn closed_count(spec: &CountSpec) -> Option<BigUint> {
    let (m, n, q) = (spec.m(), spec.n(), spec.q());
    if spec.kind() == CountKind::N && m == 0 {
        return Some(BigUint::one());
    }
    let all = |bounds: &[Bound], f: &dyn Fn(Bound) -> bool| bounds.iter().all(|&b| f(b));
    let infinite = |b: Bound| b.is_infinite();
    let top = |b: Bound| q >= 1 && b == Bound::Finite(q - 1);
    match spec.kind() {
        CountKind::N => {
            let (rows, cols) = (spec.row_bounds(), spec.col_bounds());
            if all(rows, &infinite) && all(cols, &infinite) {
                Some(hk_closed(m, n, q))
            } else if all(rows, &infinite) && all(cols, &top) {
                Some(nq_col_bounded_closed(m, n, q))
            } else if all(rows, &top) && all(cols, &infinite) {
                // Transposed column-bounded count.
                Some(nq_col_bounded_closed(n, m, q))
            } else if q == 0 {
                Some(BigUint::zero())
            } else {
                None
            }
        }
        CountKind::M => {
            // Row bounds only matter through min(r_i, q-1).
            let rows_ok = all(spec.row_bounds(), &|b| {
                b >= Bound::Finite(q.saturating_sub(1))
            });
            if q == 0 {
                Some(BigUint::zero())
            } else if rows_ok && all(spec.col_bounds(), &top) {
                Some(mq_closed(m, n, q))
            } else {
                None
            }
        }
    }
}

fn cmd_count(a: CountArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let (kind, default) = match a.kind {
        Kind::Nq => (CountKind::N, Bound::Infinite),
        Kind::Mq => (CountKind::M, Bound::Finite(a.q.saturating_sub(1))),
    };
    let rows = parse_bounds(a.rows.as_deref(), a.m, default, "rows")?;
    let cols = parse_bounds(a.cols.as_deref(), a.n, default, "cols")?;
    let spec = CountSpec::new(kind, a.m, a.n, a.q, rows, cols)?;
    let mut budget = WorkBudget::new(a.budget.work_budget);
    let count = match a.method {
        Method::Closed => closed_count(&spec).ok_or_else(|| {
            Failure::Usage(
                "no closed form for these bounds; closed covers nq with inf/inf, inf/q-1 or q-1/inf \
                 and mq with q-1 column bounds (use an oracle method)"
                    .into(),
            )
        })?,
        Method::OracleMargins => count_oracle(&spec, &mut budget)?,
        Method::OracleMatrix => count_oracle_matrix(&spec, &mut budget)?,
    };
    writeln!(out, "{count}")?;
    Ok(())
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let suite: Suite = a.suite.parse()?;
    let limits = Limits {
        max_m: a.max_m,
        max_n: a.max_n,
        max_q: a.max_q,
    };
    let mut io_result = Ok(());
    let outcome = verify::run(suite, limits, a.budget.work_budget, |r| {
        if io_result.is_ok() {
            io_result = writeln!(out, "PASS {} ({} cases)", r.check, r.cases);
        }
    });
    io_result?;
    match outcome {
        Ok(_) => Ok(()),
        Err(e @ VerifyError::Mismatch(_)) => {
            writeln!(out, "FAIL {e}")?;
            Err(Failure::Verify(e.to_string()))
        }
        Err(e @ VerifyError::Budget { .. }) => Err(Failure::Budget(e.to_string())),
        Err(e @ VerifyError::Library { .. }) => Err(Failure::Verify(e.to_string())),
    }
}

#[derive(Debug, Serialize)]
struct FitReport {
    m: u32,
    n: u32,
    degree: usize,
    coefficients: Vec<RationalRepr>,
    leading_coefficient: RationalRepr,
    verified_upto: u64,
}

fn cmd_fit(a: FitArgs, out: &mut dyn Write) -> Result<(), Failure> {
    require_dims(a.m, a.n)?;
    let min_check = u64::from(a.m) + u64::from(a.n) + EXTRA_CHECKS;
    let verified_upto = a.check_upto.unwrap_or(min_check).max(min_check);
    let poly = interpolate_hk_checked(a.m, a.n, verified_upto)?;
    let report = FitReport {
        m: a.m,
        n: a.n,
        degree: poly.degree(),
        coefficients: poly.coefficients().iter().map(RationalRepr::from).collect(),
        leading_coefficient: poly.leading_coefficient()?.into(),
        verified_upto,
    };
    let s =
        serde_json::to_string_pretty(&report).map_err(|e| Failure::Io(std::io::Error::other(e)))?;
    writeln!(out, "{s}")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("hkdet").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("1:3").unwrap(), (1, 3));
        assert!(parse_range("3:1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn bounds_parsing() {
        let b = parse_bounds(Some("inf"), 3, Bound::Finite(0), "rows").unwrap();
        assert_eq!(b, vec![Bound::Infinite; 3]);
        let b = parse_bounds(Some("1,inf"), 2, Bound::Infinite, "rows").unwrap();
        assert_eq!(b, vec![Bound::Finite(1), Bound::Infinite]);
        assert!(parse_bounds(Some("1,2"), 3, Bound::Infinite, "rows").is_err());
        assert!(parse_bounds(Some("-4"), 3, Bound::Infinite, "rows").is_err());
        assert_eq!(
            parse_bounds(None, 0, Bound::Infinite, "rows").unwrap(),
            vec![]
        );
    }

    #[test]
    fn closed_coverage() {
        let spec = CountSpec::new(
            CountKind::N,
            2,
            3,
            4,
            vec![Bound::Finite(3); 2],
            vec![Bound::Infinite; 3],
        )
        .unwrap();
        assert_eq!(closed_count(&spec), Some(nq_col_bounded_closed(3, 2, 4)));
        let spec = CountSpec::new(
            CountKind::N,
            2,
            3,
            4,
            vec![Bound::Finite(2); 2],
            vec![Bound::Infinite; 3],
        )
        .unwrap();
        assert_eq!(closed_count(&spec), None);
        let spec = CountSpec::new(
            CountKind::M,
            2,
            2,
            3,
            vec![Bound::Infinite; 2],
            vec![Bound::Finite(2); 2],
        )
        .unwrap();
        assert_eq!(closed_count(&spec), Some(mq_closed(2, 2, 3)));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(
            call(&["hk", "--m", "0", "--n", "2", "--q", "3"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["hk", "--m", "2", "--n", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--suite", "nope"]).0, EXIT_USAGE);
    }
}

//! Verification suites: exhaustive checks of the closed forms against the
//! enumeration oracles and against each other, over bounded parameter grids.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::budget::WorkBudget;
use crate::closedforms::{
    corollary_lhs, corollary_rhs, hk_closed, hk_m2_reference, mq_closed, mq_closed_from_j0,
    nq_col_bounded_closed,
};
use crate::error::Error;
use crate::exactcomb::{
    count_bounded_compositions, count_bounded_compositions_oracle, CompositionSpec,
};
use crate::polyfit::interpolate_hk;
use crate::staircase::{count_oracle, CountSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Oracle,
    Corollary,
    M2,
    Symmetry,
    Compositions,
    Polyfit,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Oracle,
        Suite::Corollary,
        Suite::M2,
        Suite::Symmetry,
        Suite::Compositions,
        Suite::Polyfit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Oracle => "oracle",
            Suite::Corollary => "corollary",
            Suite::M2 => "m2",
            Suite::Symmetry => "symmetry",
            Suite::Compositions => "compositions",
            Suite::Polyfit => "polyfit",
        }
    }

    /// Grid used when the caller does not override a limit: `(max_m, max_n, max_q)`.
    pub fn default_limits(self) -> (u32, u32, u64) {
        match self {
            Suite::All | Suite::Oracle => (3, 3, 5),
            Suite::Corollary => (2, 10, 50),
            Suite::M2 => (2, 8, 30),
            Suite::Symmetry => (6, 6, 30),
            Suite::Compositions => (6, 5, 12),
            Suite::Polyfit => (4, 4, 100),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Caller overrides for a suite's grid.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_m: Option<u32>,
    pub max_n: Option<u32>,
    pub max_q: Option<u64>,
}

impl Limits {
    fn resolve(self, suite: Suite) -> (u32, u32, u64) {
        let (m, n, q) = suite.default_limits();
        (
            self.max_m.unwrap_or(m),
            self.max_n.unwrap_or(n),
            self.max_q.unwrap_or(q),
        )
    }
}

/// One identity checked over its whole grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check: &'static str,
    pub cases: u64,
}

/// First case on which two sides of an identity differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub check: &'static str,
    pub params: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at {}: {} != {}",
            self.check, self.params, self.left, self.right
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    Mismatch(Counterexample),
    /// An oracle ran out of budget; `params` names the case being checked.
    Budget {
        params: String,
        source: Error,
    },
    /// Any other library error (e.g. a failed polynomial fit).
    Library {
        params: String,
        source: Error,
    },
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Mismatch(c) => c.fmt(f),
            VerifyError::Budget { params, source } => write!(f, "at {params}: {source}"),
            VerifyError::Library { params, source } => write!(f, "at {params}: {source}"),
        }
    }
}

impl std::error::Error for VerifyError {}

type Outcome = Result<CheckReport, VerifyError>;

struct Check {
    name: &'static str,
    cases: u64,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, cases: 0 }
    }

    fn eq<T: PartialEq + fmt::Display>(
        &mut self,
        params: impl FnOnce() -> String,
        left: T,
        right: T,
    ) -> Result<(), VerifyError> {
        self.cases += 1;
        if left == right {
            Ok(())
        } else {
            Err(VerifyError::Mismatch(Counterexample {
                check: self.name,
                params: params(),
                left: left.to_string(),
                right: right.to_string(),
            }))
        }
    }

    fn done(self) -> Outcome {
        Ok(CheckReport {
            check: self.name,
            cases: self.cases,
        })
    }
}

fn lift(params: String) -> impl FnOnce(Error) -> VerifyError {
    move |source| match source {
        Error::WorkBudgetExhausted { .. } => VerifyError::Budget { params, source },
        _ => VerifyError::Library { params, source },
    }
}

/// Runs a suite, calling `report` after each completed check. Stops at the
/// first failure.
pub fn run(
    suite: Suite,
    limits: Limits,
    budget_limit: u64,
    mut report: impl FnMut(&CheckReport),
) -> Result<Vec<CheckReport>, VerifyError> {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut done = Vec::new();
    for s in suites {
        let (max_m, max_n, max_q) = limits.resolve(s);
        let checks: Vec<Box<dyn FnOnce() -> Outcome>> = match s {
            Suite::All => unreachable!(),
            Suite::Oracle => oracle_checks(max_m, max_n, max_q, budget_limit),
            Suite::Corollary => vec![
                Box::new(move || corollary_identity(max_n, max_q)),
                Box::new(move || corollary_tuples(max_n.min(4), max_q.min(5))),
            ],
            Suite::M2 => vec![Box::new(move || m2_agreement(max_n, max_q))],
            Suite::Symmetry => vec![
                Box::new(move || transpose_symmetry(max_m, max_n, max_q)),
                Box::new(move || degenerate_cases(max_m, max_n, max_q)),
            ],
            Suite::Compositions => vec![
                Box::new(move || composition_lemma(max_n, max_q as i64, 6, budget_limit)),
                Box::new(move || tuple_interpretation(max_m, max_n, max_q)),
                Box::new(move || j0_terms(max_m.min(5), max_n, max_q.min(10))),
            ],
            Suite::Polyfit => vec![Box::new(move || polynomiality(max_m, max_n, max_q))],
        };
        for check in checks {
            let c = check()?;
            report(&c);
            done.push(c);
        }
    }
    Ok(done)
}

type Spec = fn(u32, u32, u64) -> crate::Result<CountSpec>;
type Closed = fn(u32, u32, u64) -> BigUint;

fn oracle_checks(
    max_m: u32,
    max_n: u32,
    max_q: u64,
    budget_limit: u64,
) -> Vec<Box<dyn FnOnce() -> Outcome>> {
    let cases: [(&'static str, Spec, Closed); 3] = [
        (
            "col-bounded N_q closed form = enumeration",
            CountSpec::col_bounded,
            nq_col_bounded_closed,
        ),
        ("M_q closed form = enumeration", CountSpec::mq, mq_closed),
        ("HK closed form = enumeration", CountSpec::hk, hk_closed),
    ];
    cases
        .into_iter()
        .map(|(name, spec, closed)| -> Box<dyn FnOnce() -> Outcome> {
            Box::new(move || {
                oracle_agreement(name, spec, closed, max_m, max_n, max_q, budget_limit)
            })
        })
        .collect()
}

fn oracle_agreement(
    name: &'static str,
    spec: Spec,
    closed: Closed,
    max_m: u32,
    max_n: u32,
    max_q: u64,
    budget_limit: u64,
) -> Outcome {
    let mut check = Check::new(name);
    for m in 1..=max_m {
        for n in 1..=max_n {
            for q in 1..=max_q {
                let params = format!("m={m} n={n} q={q}");
                let mut budget = WorkBudget::new(budget_limit);
                let s = spec(m, n, q).map_err(lift(params.clone()))?;
                let counted = count_oracle(&s, &mut budget).map_err(lift(params.clone()))?;
                check.eq(|| params, closed(m, n, q), counted)?;
            }
        }
    }
    check.done()
}

fn corollary_identity(max_n: u32, max_q: u64) -> Outcome {
    let mut check = Check::new("alternating sum = (nq^(n+1) - (n-2)q^n)/2");
    for n in 1..=max_n {
        for q in 0..=max_q {
            check.eq(
                || format!("n={n} q={q}"),
                corollary_lhs(n, q),
                corollary_rhs(n, q),
            )?;
        }
    }
    check.done()
}

fn corollary_tuples(max_n: u32, max_q: u64) -> Outcome {
    let mut check = Check::new("alternating sum counts (n+1)-tuples");
    for n in 1..=max_n {
        for q in 1..=max_q {
            let spec = CompositionSpec::new(n, n + 1, i64::from(n) * (q as i64 - 1), q)
                .expect("valid spec");
            let tuples = BigInt::from(count_bounded_compositions(spec));
            check.eq(
                || format!("n={n} q={q}"),
                corollary_lhs(n, q),
                tuples.clone(),
            )?;
            check.eq(|| format!("n={n} q={q}"), corollary_rhs(n, q), tuples)?;
        }
    }
    check.done()
}

fn m2_agreement(max_n: u32, max_q: u64) -> Outcome {
    let mut check = Check::new("HK(2,n,q) = two-row reference formula");
    for n in 1..=max_n {
        for q in 0..=max_q {
            check.eq(
                || format!("n={n} q={q}"),
                hk_closed(2, n, q),
                hk_m2_reference(n, q),
            )?;
        }
    }
    check.done()
}

fn transpose_symmetry(max_m: u32, max_n: u32, max_q: u64) -> Outcome {
    let mut check = Check::new("HK(m,n,q) = HK(n,m,q)");
    for m in 1..=max_m {
        for n in 1..=max_n {
            for q in 0..=max_q {
                check.eq(
                    || format!("m={m} n={n} q={q}"),
                    hk_closed(m, n, q),
                    hk_closed(n, m, q),
                )?;
            }
        }
    }
    check.done()
}

fn degenerate_cases(max_m: u32, max_n: u32, max_q: u64) -> Outcome {
    let mut check = Check::new("HK(m,n,1) = 1, HK(1,n,q) = q^n, HK(m,1,q) = q^m");
    for m in 1..=max_m {
        for n in 1..=max_n {
            check.eq(
                || format!("m={m} n={n} q=1"),
                hk_closed(m, n, 1),
                BigUint::from(1u32),
            )?;
        }
    }
    for q in 0..=max_q.min(20) {
        for n in 1..=max_n {
            check.eq(
                || format!("m=1 n={n} q={q}"),
                hk_closed(1, n, q),
                BigUint::from(q).pow(n),
            )?;
        }
        for m in 1..=max_m {
            check.eq(
                || format!("m={m} n=1 q={q}"),
                hk_closed(m, 1, q),
                BigUint::from(q).pow(m),
            )?;
        }
    }
    check.done()
}

fn composition_lemma(max_b: u32, max_w: i64, max_z: u64, budget_limit: u64) -> Outcome {
    let mut check = Check::new("composition count closed form = enumeration");
    for b in 1..=max_b {
        for a in 0..=b {
            for w in -1..=max_w {
                for z in 1..=max_z {
                    let params = format!("a={a} b={b} w={w} z={z}");
                    let spec = CompositionSpec::new(a, b, w, z).expect("valid spec");
                    let mut budget = WorkBudget::new(budget_limit);
                    let brute = count_bounded_compositions_oracle(spec, &mut budget)
                        .map_err(lift(params.clone()))?;
                    check.eq(|| params, count_bounded_compositions(spec), brute)?;
                }
            }
        }
    }
    check.done()
}

fn tuple_interpretation(max_m: u32, max_n: u32, max_q: u64) -> Outcome {
    let mut check = Check::new("col-bounded N_q = bounded (m+n-1)-tuple count");
    for m in 1..=max_m {
        for n in 1..=max_n {
            for q in 1..=max_q {
                let spec = CompositionSpec::new(n, m + n - 1, i64::from(n) * (q as i64 - 1), q)
                    .expect("valid spec");
                check.eq(
                    || format!("m={m} n={n} q={q}"),
                    nq_col_bounded_closed(m, n, q),
                    count_bounded_compositions(spec),
                )?;
            }
        }
    }
    check.done()
}

fn j0_terms(max_m: u32, max_n: u32, max_q: u64) -> Outcome {
    let mut check = Check::new("M_q sum unchanged by j = 0 terms");
    for m in 1..=max_m {
        for n in 1..=max_n {
            for q in 0..=max_q {
                check.eq(
                    || format!("m={m} n={n} q={q}"),
                    mq_closed(m, n, q),
                    mq_closed_from_j0(m, n, q),
                )?;
            }
        }
    }
    check.done()
}

fn polynomiality(max_m: u32, max_n: u32, max_q: u64) -> Outcome {
    let mut check = Check::new("fitted polynomial reproduces HK");
    for m in 1..=max_m {
        for n in 1..=max_n {
            let params = format!("m={m} n={n}");
            let p = interpolate_hk(m, n).map_err(lift(params.clone()))?;
            check.eq(|| params.clone(), p.degree() as u64, u64::from(m + n - 1))?;
            for q in 1..=max_q {
                let expected = BigRational::from_integer(BigInt::from(hk_closed(m, n, q)));
                check.eq(
                    || format!("m={m} n={n} q={q}"),
                    p.eval_int(q as i64),
                    expected,
                )?;
            }
            let transposed = interpolate_hk(n, m).map_err(lift(params.clone()))?;
            let lead = |p: &crate::polyfit::ExactPolynomial| {
                p.leading_coefficient()
                    .cloned()
                    .map_err(lift(params.clone()))
            };
            check.eq(
                || format!("{params} (leading coefficient vs transpose)"),
                lead(&p)?,
                lead(&transposed)?,
            )?;
        }
    }
    check.done()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in std::iter::once(Suite::All).chain(Suite::EACH) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_grids_pass() {
        let limits = Limits {
            max_m: Some(2),
            max_n: Some(2),
            max_q: Some(3),
        };
        let mut seen = 0;
        let reports = run(Suite::All, limits, 10_000_000, |_| seen += 1).unwrap();
        assert_eq!(reports.len(), seen);
        assert!(reports.iter().all(|r| r.cases > 0));
    }

    #[test]
    fn budget_failure_names_parameters() {
        let limits = Limits {
            max_m: Some(3),
            max_n: Some(3),
            max_q: Some(5),
        };
        match run(Suite::Oracle, limits, 10, |_| {}) {
            Err(VerifyError::Budget { params, .. }) => assert!(params.starts_with("m=")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mismatch_reports_both_values() {
        let mut check = Check::new("demo");
        let err = check.eq(|| "x=1".into(), 2, 3).unwrap_err();
        assert_eq!(err.to_string(), "demo fails at x=1: 2 != 3");
    }
}

//! Exact binomial coefficients and counts of bounded compositions.
//!
//! Every binomial coefficient in this crate counts a set, so [`binom`] uses
//! the combinatorial convention: `binom(t, b) = 0` whenever `t < b`,
//! negative `t` included. The polynomial extension (`binom(-2, 3) = -4`)
//! is never used.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::budget::WorkBudget;
use crate::error::{Error, Result};

/// `t` choose `b`, zero when `t < b`.
pub fn binom(t: i128, b: u64) -> BigUint {
    if t < 0 || t < i128::from(b) {
        return BigUint::zero();
    }
    let t = t as u128;
    let k = u128::from(b).min(t - u128::from(b));
    let mut acc = BigUint::one();
    // acc = binom(t - k + i, i) after step i, so each division is exact.
    for i in 1..=k {
        acc *= t - k + i;
        acc /= i;
    }
    acc
}

/// [`binom`] with a signed lower argument; a negative `b` is a domain error.
pub fn try_binom(t: i128, b: i128) -> Result<BigUint> {
    if b < 0 {
        return Err(Error::domain(format!(
            "binom({t}, {b}): negative lower argument"
        )));
    }
    let b = u64::try_from(b)
        .map_err(|_| Error::domain(format!("binom({t}, {b}): lower argument too large")))?;
    Ok(binom(t, b))
}

/// Parameters of a bounded-composition count: `b`-tuples of non-negative
/// integers with total at most `w` whose first `a` entries are `< z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompositionSpec {
    a: u32,
    b: u32,
    w: i64,
    z: u64,
}

impl CompositionSpec {
    pub fn new(a: u32, b: u32, w: i64, z: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::domain("tuple length b must be positive"));
        }
        if a > b {
            return Err(Error::domain(format!(
                "capped prefix a={a} longer than tuple length b={b}"
            )));
        }
        if z == 0 {
            return Err(Error::domain("entry cap z must be positive"));
        }
        Ok(CompositionSpec { a, b, w, z })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn z(&self) -> u64 {
        self.z
    }
}

/// Inclusion-exclusion count `sum_{i=0}^{a} (-1)^i C(a,i) C(w - i z + b, b)`.
pub fn count_bounded_compositions(spec: CompositionSpec) -> BigUint {
    if spec.w < 0 {
        return BigUint::zero();
    }
    let (a, b) = (u64::from(spec.a), u64::from(spec.b));
    let w = i128::from(spec.w);
    let z = i128::from(spec.z);
    let mut total = BigInt::zero();
    for i in 0..=a {
        let t = w - i128::from(i) * z + i128::from(b);
        let term = BigInt::from(binom(i128::from(a), i) * binom(t, b));
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    debug_assert!(!total.is_negative());
    total.magnitude().clone()
}

/// Brute-force counterpart of [`count_bounded_compositions`]: walks every
/// admissible tuple, charging one budget step per visited prefix.
///
/// The number of visited prefixes is at most `(b + 1) * C(w + b, b)`, so the
/// default budget of `10^8` covers e.g. `b = 6, w = 40` but not `b = 8, w = 60`.
pub fn count_bounded_compositions_oracle(
    spec: CompositionSpec,
    budget: &mut WorkBudget,
) -> Result<BigUint> {
    if spec.w < 0 {
        return Ok(BigUint::zero());
    }
    let mut count: u64 = 0;
    walk_tuples(&spec, 0, spec.w as u64, &mut count, budget)?;
    Ok(BigUint::from(count))
}

fn walk_tuples(
    spec: &CompositionSpec,
    pos: u32,
    remaining: u64,
    count: &mut u64,
    budget: &mut WorkBudget,
) -> Result<()> {
    budget.charge(1, "enumerating bounded compositions")?;
    if pos == spec.b {
        *count += 1;
        return Ok(());
    }
    let cap = if pos < spec.a {
        remaining.min(spec.z - 1)
    } else {
        remaining
    };
    for v in 0..=cap {
        walk_tuples(spec, pos + 1, remaining - v, count, budget)?;
    }
    Ok(())
}

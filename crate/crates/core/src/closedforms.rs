//! Closed forms for the staircase counts of the `m x n` determinantal ring.
//!
//! All sums are alternating sums of binomial coefficients under the
//! combinatorial convention of [`binom`], evaluated exactly with big
//! integers. `q = 0` is accepted everywhere and yields 0: the ideal then
//! contains `x_ij^0 = 1`.
//!
//! # Panics
//!
//! Functions taking `m` and `n` panic if either is zero.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactcomb::binom;

fn check_dims(m: u32, n: u32) {
    assert!(
        m >= 1 && n >= 1,
        "matrix dimensions must be positive, got {m}x{n}"
    );
}

fn signed(negative: bool, v: BigUint) -> BigInt {
    BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, v)
}

fn into_count(v: BigInt, what: &str) -> BigUint {
    assert!(
        !v.is_negative(),
        "{what} evaluated to a negative number: {v}"
    );
    v.into_parts().1
}

/// `N_q(m, n; inf..; q-1..)`: staircase monomials whose column sums are all
/// below `q`, i.e. the colength of `I_2 + (x_ij^q) + sum_j (column j)^q`.
///
/// `sum_{i=1}^{n} (-1)^(n-i) C(n,i) C(iq + m - 1, m + n - 1)`
pub fn nq_col_bounded_closed(m: u32, n: u32, q: u64) -> BigUint {
    check_dims(m, n);
    let (m, n, q) = (i128::from(m), i128::from(n), i128::from(q));
    let top = (m + n - 1) as u64;
    let mut acc = BigInt::zero();
    for i in 1..=n {
        let term = binom(n, i as u64) * binom(i * q + m - 1, top);
        acc += signed((n - i) % 2 == 1, term);
    }
    into_count(acc, "N_q(m,n;inf;q-1)")
}

/// `M_q(m, n; q-1..; q-1..)`: staircase monomials with all row sums below `q`
/// and at least one column sum `>= q`.
///
/// `sum_{i=1}^{n} sum_{j=1}^{m} (-1)^(m-j+i-1) C(n,i) C(m,j) C(jq - iq + n - 1, m + n - 1)`
pub fn mq_closed(m: u32, n: u32, q: u64) -> BigUint {
    mq_sum(m, n, q, 1)
}

/// [`mq_closed`] with the inner sum started at `j = 0`. Those extra terms all
/// vanish; this variant exists to check that.
pub fn mq_closed_from_j0(m: u32, n: u32, q: u64) -> BigUint {
    mq_sum(m, n, q, 0)
}

fn mq_sum(m: u32, n: u32, q: u64, j_start: i128) -> BigUint {
    check_dims(m, n);
    let (m, n, q) = (i128::from(m), i128::from(n), i128::from(q));
    let top = (m + n - 1) as u64;
    let mut acc = BigInt::zero();
    for i in 1..=n {
        let outer = binom(n, i as u64);
        for j in j_start..=m {
            let b = binom(j * q - i * q + n - 1, top);
            if b.is_zero() {
                continue;
            }
            let term = &outer * binom(m, j as u64) * b;
            acc += signed((m - j + i - 1) % 2 == 1, term);
        }
    }
    into_count(acc, "M_q(m,n;q-1;q-1)")
}

/// The generalized Hilbert-Kunz function `HK(q)`: the dimension of
/// `k[X] / (I_2(X) + (x_11^q, ..., x_mn^q))`.
///
/// Every staircase monomial counted by `HK` either has all column sums below
/// `q` or has all row sums below `q` and some column sum `>= q`, so
/// `HK(q) = N_q(m,n;inf;q-1) + M_q(m,n;q-1;q-1)`.
pub fn hk_closed(m: u32, n: u32, q: u64) -> BigUint {
    nq_col_bounded_closed(m, n, q) + mq_closed(m, n, q)
}

/// The earlier closed form for two-row matrices,
/// `(n q^(n+1) - (n-2) q^n) / 2 + n C(q + n - 1, n + 1)`.
///
/// Sourced from the literature rather than derived here; used only as an
/// independent target for [`hk_closed`] at `m = 2`.
pub fn hk_m2_reference(n: u32, q: u64) -> BigUint {
    assert!(n >= 1, "n must be positive");
    let tail = BigUint::from(n) * binom(i128::from(q) + i128::from(n) - 1, u64::from(n) + 1);
    into_count(
        corollary_rhs(n, q) + BigInt::from(tail),
        "m = 2 reference formula",
    )
}

/// `sum_{i=1}^{n} (-1)^(n-i) C(n,i) C(iq + 1, n + 1)`.
pub fn corollary_lhs(n: u32, q: u64) -> BigInt {
    assert!(n >= 1, "n must be positive");
    let (n, q) = (i128::from(n), i128::from(q));
    let mut acc = BigInt::zero();
    for i in 1..=n {
        let term = binom(n, i as u64) * binom(i * q + 1, (n + 1) as u64);
        acc += signed((n - i) % 2 == 1, term);
    }
    acc
}

/// `(n q^(n+1) - (n-2) q^n) / 2`.
///
/// The numerator equals `q^n (n(q-1) + 2)`, which is always even.
pub fn corollary_rhs(n: u32, q: u64) -> BigInt {
    assert!(n >= 1, "n must be positive");
    let qn = BigInt::from(q).pow(n);
    let numerator: BigInt = BigInt::from(n) * &qn * BigInt::from(q) - (BigInt::from(n) - 2) * &qn;
    let (half, rem) = numerator.div_rem(&BigInt::from(2));
    assert!(rem.is_zero(), "odd numerator {numerator} for n={n}, q={q}");
    half
}

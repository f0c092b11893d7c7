//! Staircase monomials and brute-force counts of them.
//!
//! A monomial `prod x_ij^p_ij` is identified with its `m x n` exponent
//! matrix. It is a *staircase* monomial when its nonzero positions form a
//! southwest-northeast chain: no nonzero entry has another nonzero entry
//! strictly to its northwest. Staircase monomials with all row sums `< q`
//! or all column sums `< q` form a vector-space basis of
//! `k[X] / (I_2(X) + (x_ij^q))`, which is why counting them computes colengths.
//!
//! Equal-total margins determine a unique staircase matrix, rebuilt by the
//! southwest corner rule in [`margins_to_matrix`]. The counting oracles
//! enumerate margin pairs through that bijection ([`count_oracle`]) or
//! enumerate raw matrices ([`count_oracle_matrix`], [`mirror_count_oracle`]).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::WorkBudget;
use crate::error::{Error, Result};

/// A row or column bound: a natural number or infinity.
///
/// `Finite(_) < Infinite`, so `min` behaves as expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bound {
    Finite(u64),
    Infinite,
}

impl Bound {
    /// Whether a sum of `v` respects this bound.
    pub fn admits(self, v: u64) -> bool {
        match self {
            Bound::Finite(b) => v <= b,
            Bound::Infinite => true,
        }
    }

    /// The smaller of this bound and a finite cap.
    pub fn cap(self, cap: u64) -> u64 {
        match self {
            Bound::Finite(b) => b.min(cap),
            Bound::Infinite => cap,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Bound::Infinite
    }
}

impl From<u64> for Bound {
    fn from(v: u64) -> Self {
        Bound::Finite(v)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Bound::Infinite),
            t => t.parse::<u64>().map(Bound::Finite).map_err(|_| {
                Error::domain(format!(
                    "invalid bound {t:?}: expected a natural number or \"inf\""
                ))
            }),
        }
    }
}

/// Exponents `p_ij` of a monomial in the `m x n` variables, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl ExponentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0; rows * cols])
    }

    pub fn new(rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::domain("exponent matrix needs positive dimensions"));
        }
        if entries.len() != rows * cols {
            return Err(Error::domain(format!(
                "{} entries given for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExponentMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("ragged exponent matrix"));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.entries
            .chunks(self.cols)
            .map(<[u64]>::to_vec)
            .collect()
    }

    /// The same monomial with column order reversed.
    pub fn mirrored(&self) -> ExponentMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for row in self.entries.chunks(self.cols) {
            entries.extend(row.iter().rev());
        }
        ExponentMatrix { entries, ..*self }
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.cols).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// True iff no nonzero entry has a nonzero entry strictly northwest of it
/// (smaller row index and smaller column index).
pub fn is_staircase(mat: &ExponentMatrix) -> bool {
    // Leftmost nonzero column among the rows above.
    let mut leftmost_above = usize::MAX;
    for i in 0..mat.rows {
        let row = mat.row(i);
        let mut leftmost_here = usize::MAX;
        for (j, &p) in row.iter().enumerate() {
            if p > 0 {
                if j > leftmost_above {
                    return false;
                }
                leftmost_here = leftmost_here.min(j);
            }
        }
        leftmost_above = leftmost_above.min(leftmost_here);
    }
    true
}

/// The mirror image of [`is_staircase`]: no nonzero entry strictly northeast
/// of a nonzero entry.
pub fn is_staircase_mirrored(mat: &ExponentMatrix) -> bool {
    is_staircase(&mat.mirrored())
}

/// Row sums and column sums of an exponent matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Margins {
    /// Row sums followed by column sums.
    sums: Vec<u64>,
    m: usize,
}

impl Margins {
    pub fn new(rows: Vec<u64>, cols: Vec<u64>) -> Result<Self> {
        Self::from_slices(&rows, &cols)
    }

    pub fn from_slices(rows: &[u64], cols: &[u64]) -> Result<Self> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::domain(
                "margins need at least one row and one column",
            ));
        }
        let (rt, ct): (u128, u128) = (
            rows.iter().map(|&r| u128::from(r)).sum(),
            cols.iter().map(|&c| u128::from(c)).sum(),
        );
        if rt != ct {
            return Err(Error::domain(format!(
                "row total {rt} differs from column total {ct}"
            )));
        }
        Ok(Self::unchecked(rows, cols))
    }

    fn unchecked(rows: &[u64], cols: &[u64]) -> Self {
        let mut sums = Vec::with_capacity(rows.len() + cols.len());
        sums.extend_from_slice(rows);
        sums.extend_from_slice(cols);
        Margins {
            sums,
            m: rows.len(),
        }
    }

    pub fn rows(&self) -> &[u64] {
        &self.sums[..self.m]
    }

    pub fn cols(&self) -> &[u64] {
        &self.sums[self.m..]
    }

    pub fn total(&self) -> u64 {
        self.rows().iter().sum()
    }
}

/// The unique staircase matrix with the given margins.
///
/// Southwest corner rule: the bottom-left entry of the remaining block takes
/// `min(column total, row total)`, and whichever line is exhausted is dropped.
/// When both are exhausted the column goes first; the row left behind then
/// has remainder zero, so the result does not depend on the choice.
pub fn margins_to_matrix(margins: &Margins) -> ExponentMatrix {
    let (rows, cols) = (margins.rows(), margins.cols());
    let (m, n) = (rows.len(), cols.len());
    let mut mat = ExponentMatrix {
        rows: m,
        cols: n,
        entries: vec![0; m * n],
    };
    // The corner only moves up or right, so only the remainders of the
    // current row and column are live.
    let (mut i, mut j) = (m - 1, 0);
    let (mut row_left, mut col_left) = (rows[i], cols[0]);
    loop {
        let v = row_left.min(col_left);
        mat.set(i, j, v);
        row_left -= v;
        col_left -= v;
        if col_left == 0 {
            j += 1;
            if j == n {
                break;
            }
            col_left = cols[j];
        } else {
            if i == 0 {
                break;
            }
            i -= 1;
            row_left = rows[i];
        }
    }
    mat
}

pub fn matrix_to_margins(mat: &ExponentMatrix) -> Margins {
    let (m, n) = (mat.rows, mat.cols);
    let mut sums = vec![0u64; m + n];
    for (i, row) in mat.entries.chunks_exact(n).enumerate() {
        for (j, &p) in row.iter().enumerate() {
            sums[i] += p;
            sums[m + j] += p;
        }
    }
    Margins { sums, m }
}

/// Which family of monomials a [`CountSpec`] counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CountKind {
    /// Row sums `<= r_i`, column sums `<= c_j`, and all row sums `< q` or all
    /// column sums `< q`.
    N,
    /// Row sums `<= min(r_i, q - 1)` and some column sum `> c_j`.
    M,
}

/// A fully parameterized staircase counting problem `N_q` or `M_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CountSpec {
    kind: CountKind,
    m: u32,
    n: u32,
    q: u64,
    row_bounds: Vec<Bound>,
    col_bounds: Vec<Bound>,
}

impl CountSpec {
    pub fn new(
        kind: CountKind,
        m: u32,
        n: u32,
        q: u64,
        row_bounds: Vec<Bound>,
        col_bounds: Vec<Bound>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("n must be positive"));
        }
        if m == 0 && kind == CountKind::M {
            return Err(Error::domain("m = 0 is only meaningful for N-type counts"));
        }
        if row_bounds.len() != m as usize {
            return Err(Error::domain(format!(
                "{} row bounds given for m = {m}",
                row_bounds.len()
            )));
        }
        if col_bounds.len() != n as usize {
            return Err(Error::domain(format!(
                "{} column bounds given for n = {n}",
                col_bounds.len()
            )));
        }
        Ok(CountSpec {
            kind,
            m,
            n,
            q,
            row_bounds,
            col_bounds,
        })
    }

    /// `N_q(m, n; inf..; inf..)`, the Hilbert-Kunz count.
    pub fn hk(m: u32, n: u32, q: u64) -> Result<Self> {
        Self::new(
            CountKind::N,
            m,
            n,
            q,
            vec![Bound::Infinite; m as usize],
            vec![Bound::Infinite; n as usize],
        )
    }

    /// `N_q(m, n; inf..; q-1..)`.
    pub fn col_bounded(m: u32, n: u32, q: u64) -> Result<Self> {
        let c = Bound::Finite(q.saturating_sub(1));
        Self::new(
            CountKind::N,
            m,
            n,
            q,
            vec![Bound::Infinite; m as usize],
            vec![c; n as usize],
        )
    }

    /// `M_q(m, n; q-1..; q-1..)`.
    pub fn mq(m: u32, n: u32, q: u64) -> Result<Self> {
        let c = Bound::Finite(q.saturating_sub(1));
        Self::new(
            CountKind::M,
            m,
            n,
            q,
            vec![c; m as usize],
            vec![c; n as usize],
        )
    }

    pub fn kind(&self) -> CountKind {
        self.kind
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn row_bounds(&self) -> &[Bound] {
        &self.row_bounds
    }

    pub fn col_bounds(&self) -> &[Bound] {
        &self.col_bounds
    }

    /// The same spec with the column bounds in reverse order.
    pub fn with_reversed_cols(&self) -> CountSpec {
        let mut s = self.clone();
        s.col_bounds.reverse();
        s
    }

    /// The transposed problem. Only N-type conditions are symmetric under
    /// transposition, so M-type specs are rejected.
    pub fn transposed(&self) -> Result<CountSpec> {
        if self.kind == CountKind::M {
            return Err(Error::domain("M-type counts are not transpose symmetric"));
        }
        if self.m == 0 {
            return Err(Error::domain("cannot transpose a spec with m = 0"));
        }
        Self::new(
            CountKind::N,
            self.n,
            self.m,
            self.q,
            self.col_bounds.clone(),
            self.row_bounds.clone(),
        )
    }

    /// Whether a staircase matrix with these margins is counted.
    pub fn admits(&self, margins: &Margins) -> bool {
        let q = self.q;
        match self.kind {
            CountKind::N => {
                let within = margins
                    .rows()
                    .iter()
                    .zip(&self.row_bounds)
                    .all(|(&r, b)| b.admits(r))
                    && margins
                        .cols()
                        .iter()
                        .zip(&self.col_bounds)
                        .all(|(&c, b)| b.admits(c));
                within
                    && (margins.rows().iter().all(|&r| r < q)
                        || margins.cols().iter().all(|&c| c < q))
            }
            CountKind::M => {
                q > 0
                    && margins
                        .rows()
                        .iter()
                        .zip(&self.row_bounds)
                        .all(|(&r, b)| r <= b.cap(q - 1))
                    && margins
                        .cols()
                        .iter()
                        .zip(&self.col_bounds)
                        .any(|(&c, b)| !b.admits(c))
            }
        }
    }

    /// Finite upper bounds on every row sum and column sum of a counted matrix.
    fn margin_caps(&self) -> (Vec<u64>, Vec<u64>) {
        let top = self.q - 1;
        match self.kind {
            CountKind::N => {
                // Either all rows are < q (so each column sum is at most m(q-1))
                // or all columns are (so each row sum is at most n(q-1)).
                let row_cap = top.saturating_mul(u64::from(self.n));
                let col_cap = top.saturating_mul(u64::from(self.m));
                (
                    self.row_bounds.iter().map(|b| b.cap(row_cap)).collect(),
                    self.col_bounds.iter().map(|b| b.cap(col_cap)).collect(),
                )
            }
            CountKind::M => {
                let rows: Vec<u64> = self.row_bounds.iter().map(|b| b.cap(top)).collect();
                let total = rows.iter().fold(0u64, |a, &r| a.saturating_add(r));
                (rows, vec![total; self.n as usize])
            }
        }
    }

    /// Answers fixed by convention without enumeration: `m = 0` gives 1 and
    /// `q = 0` gives 0.
    fn trivial_count(&self) -> Option<BigUint> {
        if self.m == 0 {
            Some(BigUint::one())
        } else if self.q == 0 {
            Some(BigUint::zero())
        } else {
            None
        }
    }
}

/// Counts the monomials described by `spec` by enumerating margin pairs and
/// mapping each through the corner rule.
///
/// Every pair of row and column vectors with equal totals inside the finite
/// caps implied by the spec is visited once, at one budget step per pair or
/// partial column vector.
pub fn count_oracle(spec: &CountSpec, budget: &mut WorkBudget) -> Result<BigUint> {
    if let Some(c) = spec.trivial_count() {
        return Ok(c);
    }
    let (row_caps, col_caps) = spec.margin_caps();
    let mut count: u64 = 0;
    let mut rows = vec![0u64; row_caps.len()];
    loop {
        budget.charge(1, "enumerating row margins")?;
        let total: u64 = rows.iter().sum();
        let mut cols = vec![0u64; col_caps.len()];
        walk_columns(
            spec, &rows, &col_caps, &mut cols, 0, total, &mut count, budget,
        )?;
        if !advance(&mut rows, &row_caps) {
            break;
        }
    }
    Ok(BigUint::from(count))
}

/// Odometer step over `0..=caps[k]` in every coordinate; false once exhausted.
fn advance(v: &mut [u64], caps: &[u64]) -> bool {
    for (x, &cap) in v.iter_mut().zip(caps) {
        if *x < cap {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn walk_columns(
    spec: &CountSpec,
    rows: &[u64],
    caps: &[u64],
    cols: &mut [u64],
    pos: usize,
    remaining: u64,
    count: &mut u64,
    budget: &mut WorkBudget,
) -> Result<()> {
    budget.charge(1, "enumerating column margins")?;
    if pos + 1 == cols.len() {
        if remaining > caps[pos] {
            return Ok(());
        }
        cols[pos] = remaining;
        let mat = margins_to_matrix(&Margins::unchecked(rows, cols));
        debug_assert!(is_staircase(&mat));
        if spec.admits(&matrix_to_margins(&mat)) {
            *count += 1;
        }
        return Ok(());
    }
    // Columns after this one can absorb at most this much.
    let rest: u64 = caps[pos + 1..]
        .iter()
        .fold(0u64, |a, &c| a.saturating_add(c));
    let lo = remaining.saturating_sub(rest);
    for v in lo..=remaining.min(caps[pos]) {
        cols[pos] = v;
        walk_columns(
            spec,
            rows,
            caps,
            cols,
            pos + 1,
            remaining - v,
            count,
            budget,
        )?;
    }
    Ok(())
}

/// Counts the monomials described by `spec` by enumerating every exponent
/// matrix entry by entry and keeping the staircase ones.
///
/// Costs on the order of `q^(mn)` steps; use for small cross-checks.
pub fn count_oracle_matrix(spec: &CountSpec, budget: &mut WorkBudget) -> Result<BigUint> {
    enumerate_matrices(spec, false, budget)
}

/// Counts with the mirrored staircase condition (no nonzero strictly
/// northeast of a nonzero) and the column bounds read right to left.
///
/// Reversing columns maps one family onto the other, so this always equals
/// [`count_oracle`]; for constant column bounds it is simply the same count
/// under the other orientation.
pub fn mirror_count_oracle(spec: &CountSpec, budget: &mut WorkBudget) -> Result<BigUint> {
    enumerate_matrices(&spec.with_reversed_cols(), true, budget)
}

struct MatrixWalk<'a> {
    spec: &'a CountSpec,
    mirrored: bool,
    m: usize,
    n: usize,
    entry_cap: u64,
    row_caps: Vec<u64>,
    col_caps: Vec<u64>,
    entries: Vec<u64>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    count: u64,
}

fn enumerate_matrices(
    spec: &CountSpec,
    mirrored: bool,
    budget: &mut WorkBudget,
) -> Result<BigUint> {
    if let Some(c) = spec.trivial_count() {
        return Ok(c);
    }
    let (row_caps, col_caps) = spec.margin_caps();
    let (m, n) = (spec.m as usize, spec.n as usize);
    let mut walk = MatrixWalk {
        spec,
        mirrored,
        m,
        n,
        // Every counted matrix has all rows < q or all columns < q.
        entry_cap: spec.q - 1,
        row_caps,
        col_caps,
        entries: vec![0; m * n],
        row_sums: vec![0; m],
        col_sums: vec![0; n],
        count: 0,
    };
    walk.cell(0, budget)?;
    Ok(BigUint::from(walk.count))
}

impl MatrixWalk<'_> {
    /// Whether a nonzero at `(i, j)` conflicts with a nonzero in an earlier row.
    fn blocked(&self, i: usize, j: usize) -> bool {
        (0..i).any(|k| {
            let row = &self.entries[k * self.n..(k + 1) * self.n];
            if self.mirrored {
                row[j + 1..].iter().any(|&p| p > 0)
            } else {
                row[..j].iter().any(|&p| p > 0)
            }
        })
    }

    fn cell(&mut self, idx: usize, budget: &mut WorkBudget) -> Result<()> {
        budget.charge(1, "enumerating exponent matrices")?;
        if idx == self.m * self.n {
            if self
                .spec
                .admits(&Margins::unchecked(&self.row_sums, &self.col_sums))
            {
                self.count += 1;
            }
            return Ok(());
        }
        let (i, j) = (idx / self.n, idx % self.n);
        let room = (self.row_caps[i] - self.row_sums[i])
            .min(self.col_caps[j] - self.col_sums[j])
            .min(self.entry_cap);
        self.cell(idx + 1, budget)?;
        if room == 0 || self.blocked(i, j) {
            return Ok(());
        }
        for v in 1..=room {
            self.entries[idx] = v;
            self.row_sums[i] += v;
            self.col_sums[j] += v;
            let r = self.cell(idx + 1, budget);
            self.row_sums[i] -= v;
            self.col_sums[j] -= v;
            r?;
        }
        self.entries[idx] = 0;
        Ok(())
    }
}

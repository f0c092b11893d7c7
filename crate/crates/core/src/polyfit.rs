//! Exact polynomial interpolation of `HK(q)`.
//!
//! `HK(q)` is a polynomial in `q` of degree `m + n - 1`, the dimension of the
//! determinantal ring. [`interpolate_hk`] recovers it from `m + n` values by
//! Newton divided differences over the rationals, then checks it against
//! further values before handing it out. Its leading coefficient is the
//! generalized Hilbert-Kunz multiplicity.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::closedforms::hk_closed;
use crate::error::{Error, Result};

/// Number of points beyond the interpolation nodes that a fit must reproduce.
pub const EXTRA_CHECKS: u64 = 10;

/// A polynomial in one variable with exact rational coefficients, constant
/// term first, with no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    coefficients: Vec<BigRational>,
}

impl ExactPolynomial {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        ExactPolynomial { coefficients }
    }

    pub fn zero() -> Self {
        ExactPolynomial {
            coefficients: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn leading_coefficient(&self) -> Result<&BigRational> {
        self.coefficients
            .last()
            .ok_or_else(|| Error::domain("the zero polynomial has no leading coefficient"))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// `self * (x - root)`.
    fn mul_linear(&self, root: &BigRational) -> ExactPolynomial {
        let mut out = vec![BigRational::zero(); self.coefficients.len() + 1];
        for (k, c) in self.coefficients.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= c * root;
        }
        ExactPolynomial::new(out)
    }

    fn add_constant(mut self, c: &BigRational) -> ExactPolynomial {
        if self.coefficients.is_empty() {
            self.coefficients.push(BigRational::zero());
        }
        self.coefficients[0] += c;
        ExactPolynomial::new(self.coefficients)
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{k}")?,
            }
        }
        Ok(())
    }
}

/// A rational in lowest terms as decimal strings, denominator positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalRepr {
    fn from(r: &BigRational) -> Self {
        RationalRepr {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

/// The unique polynomial of degree `< points.len()` through the given points.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> Result<ExactPolynomial> {
    let xs: Vec<&BigRational> = points.iter().map(|(x, _)| x).collect();
    for (i, x) in xs.iter().enumerate() {
        if xs[..i].contains(x) {
            return Err(Error::domain(format!("repeated interpolation node {x}")));
        }
    }
    // In-place divided differences: after pass k, table[i] = f[x_{i-k}..x_i].
    let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for k in 1..table.len() {
        for i in (k..table.len()).rev() {
            let diff = &table[i] - &table[i - 1];
            table[i] = diff / (xs[i] - xs[i - k]);
        }
    }
    // Newton form to monomial basis by Horner's scheme.
    let mut poly = ExactPolynomial::zero();
    for (coef, x) in table.iter().zip(&xs).rev() {
        poly = poly.mul_linear(x).add_constant(coef);
    }
    Ok(poly)
}

/// `HK(q)` for the `m x n` matrix as an exact polynomial in `q`, verified at
/// `q = m + n + 1, ..., m + n + 10`.
pub fn interpolate_hk(m: u32, n: u32) -> Result<ExactPolynomial> {
    interpolate_hk_checked(m, n, 0)
}

/// Like [`interpolate_hk`], but also verifies every `q` up to `check_upto`.
pub fn interpolate_hk_checked(m: u32, n: u32, check_upto: u64) -> Result<ExactPolynomial> {
    if m == 0 || n == 0 {
        return Err(Error::domain(format!(
            "matrix dimensions must be positive, got {m}x{n}"
        )));
    }
    let nodes = u64::from(m) + u64::from(n);
    let as_rational = |q: u64| BigRational::from_integer(BigInt::from(hk_closed(m, n, q)));
    let points: Vec<_> = (1..=nodes)
        .map(|q| (BigRational::from_integer(BigInt::from(q)), as_rational(q)))
        .collect();
    let poly = interpolate(&points)?;

    let expected_degree = (nodes - 1) as usize;
    if poly.degree() != expected_degree {
        return Err(Error::DegreeMismatch {
            m,
            n,
            found: poly.degree(),
            expected: expected_degree,
        });
    }
    let last = check_upto.max(nodes + EXTRA_CHECKS);
    for q in nodes + 1..=last {
        let fitted = poly.eval(&BigRational::from_integer(BigInt::from(q)));
        let expected = as_rational(q);
        if fitted != expected {
            return Err(Error::NotPolynomial {
                m,
                n,
                q,
                fitted: fitted.to_string(),
                expected: expected.to_string(),
            });
        }
    }
    Ok(poly)
}

/// Leading coefficient of a nonzero polynomial.
pub fn leading_coefficient(p: &ExactPolynomial) -> Result<BigRational> {
    p.leading_coefficient().cloned()
}

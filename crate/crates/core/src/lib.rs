//! Exact evaluation of the generalized Hilbert-Kunz function of the
//! determinantal ring `k[X]/I_2(X)`, where `X` is a generic `m x n` matrix.
//!
//! Colengths are never computed through ideal arithmetic. Everything here
//! counts staircase monomials: either through the alternating binomial sums
//! in [`closedforms`], or by brute-force enumeration in [`staircase`], which
//! serves as the independent oracle for the closed forms.
//!
//! ```
//! use hkdet::closedforms::hk_closed;
//!
//! // k[x11, x12, x21, x22] / (I_2 + (x_ij^2)) has dimension 10.
//! assert_eq!(hk_closed(2, 2, 2).to_string(), "10");
//! ```

pub mod budget;
pub mod cli;
pub mod closedforms;
pub mod error;
pub mod exactcomb;
pub mod polyfit;
pub mod staircase;
pub mod verify;

pub use budget::WorkBudget;
pub use error::{Error, Result};

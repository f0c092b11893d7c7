use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arguments outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration oracle ran past its configured work budget.
    #[error("work budget of {budget} steps exhausted while {context}")]
    WorkBudgetExhausted { budget: u64, context: String },

    /// An interpolated polynomial failed to reproduce HK at a check point.
    #[error("fit for m={m}, n={n} disagrees at q={q}: polynomial gives {fitted}, closed form gives {expected}")]
    NotPolynomial {
        m: u32,
        n: u32,
        q: u64,
        fitted: String,
        expected: String,
    },

    #[error("fit for m={m}, n={n} has degree {found}, expected {expected}")]
    DegreeMismatch {
        m: u32,
        n: u32,
        found: usize,
        expected: usize,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

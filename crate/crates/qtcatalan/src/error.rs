//! Crate-wide error type.
//!
//! Every fallible operation in the library returns [`Error`]; the variants
//! mirror the distinct failure contracts (coprimality, stability, weight
//! mismatches, inexact divisions, ...) so callers can match on them.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The operation is only defined when gcd(m, n) = 1.
    #[error("({m}, {n}) must be coprime for this operation")]
    NonCoprime { m: i64, n: i64 },

    /// An affine composition failed the required n-stability test.
    #[error("affine composition {window} is not {n}-stable")]
    NotStable { window: String, n: i64 },

    /// A weight composition does not fit the object it is applied to.
    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    /// Polynomial operands live in rings with different numbers of x-variables.
    #[error("polynomial rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    /// A descent set must be a subset of {1, ..., m-1}.
    #[error("descent set {set:?} is not contained in 1..={max}")]
    BadDescentSet { set: Vec<i64>, max: i64 },

    /// A (q,t)-coefficient slice is not a symmetric polynomial in the x-variables.
    #[error("coefficient of q^{eq} t^{et} is not symmetric in the x variables: {detail}")]
    NotSymmetric { eq: i64, et: i64, detail: String },

    /// An exact polynomial division left a nonzero remainder.
    #[error("polynomial division is not exact: {0}")]
    NotDivisible(String),

    /// Formal exp needs constant term 0; formal log needs constant term 1.
    #[error("bad constant term for series {op}: expected {expected}, found {found}")]
    BadConstantTerm {
        op: &'static str,
        expected: &'static str,
        found: String,
    },

    /// A series coefficient that the theory promises to be an integer is not.
    #[error("series coefficient of x^{k} is not an integer: {value}")]
    NonIntegerCoefficient { k: usize, value: String },

    /// Construction or argument validation failure.
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

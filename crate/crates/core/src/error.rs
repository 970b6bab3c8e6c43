use alloc::string::String;
use core::fmt;

use crate::semigroup::ValidationReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Two related pairs whose images disagree modulo a candidate partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruenceWitness {
    /// `a ~ a2` and `b ~ b2` but `a + b` and `a2 + b2` land in different classes.
    Sum { a: usize, b: usize, a2: usize, b2: usize },
    /// `a ~ a2` but `a*` and `a2*` land in different classes.
    Star { a: usize, a2: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Malformed raw parts (sizes, ranges, labels).
    Structure(String),
    /// The carrier would exceed [`crate::MAX_ELEMENTS`].
    TooLarge { requested: usize },
    InvalidArgument(&'static str),
    /// A constructed table violates a *-semigroup law.
    InvalidStructure(ValidationReport),
    /// `map(a + b) != map(a) + map(b)`, or `map(a*) != map(a)*` when `b` is `None`.
    NotAHomomorphism { a: usize, b: Option<usize> },
    NotACongruence(CongruenceWitness),
    InvalidPartition(String),
    NoZero,
    Precondition(String),
    NotHermitianSymmetric { element: usize },
    NotPositiveDefinite { min_eigenvalue: f64 },
    IllDefinedShift { residual: f64, tolerance: f64 },
    InvalidMeasure(String),
    NotOnto { missing: usize },
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Structure(msg) => write!(f, "malformed semigroup: {msg}"),
            Error::TooLarge { requested } => write!(
                f,
                "{requested} elements exceeds the limit of {}",
                crate::MAX_ELEMENTS
            ),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InvalidStructure(report) => {
                write!(f, "table violates *-semigroup laws: {report}")
            }
            Error::NotAHomomorphism { a, b: Some(b) } => {
                write!(f, "map is not additive at ({a}, {b})")
            }
            Error::NotAHomomorphism { a, b: None } => {
                write!(f, "map does not commute with the involution at {a}")
            }
            Error::NotACongruence(CongruenceWitness::Sum { a, b, a2, b2 }) => write!(
                f,
                "partition is not a congruence: {a}+{b} and {a2}+{b2} fall in different classes"
            ),
            Error::NotACongruence(CongruenceWitness::Star { a, a2 }) => write!(
                f,
                "partition is not a congruence: {a}* and {a2}* fall in different classes"
            ),
            Error::InvalidPartition(msg) => write!(f, "invalid partition: {msg}"),
            Error::NoZero => f.write_str("semigroup has no zero element"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::NotHermitianSymmetric { element } => {
                write!(f, "function is not hermitian-symmetric at element {element}")
            }
            Error::NotPositiveDefinite { min_eigenvalue } => write!(
                f,
                "function is not positive definite (eigenvalue {min_eigenvalue:e})"
            ),
            Error::IllDefinedShift {
                residual,
                tolerance,
            } => write!(
                f,
                "shift is not well defined on the kernel span (residual {residual:e} > {tolerance:e})"
            ),
            Error::InvalidMeasure(msg) => write!(f, "invalid measure: {msg}"),
            Error::NotOnto { missing } => {
                write!(f, "homomorphism is not onto (element {missing} has no preimage)")
            }
            Error::Internal(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

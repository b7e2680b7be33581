use std::fmt;

use thiserror::Error;

/// Row or column, used to locate axiom violations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Col,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => f.write_str("row"),
            Axis::Col => f.write_str("col"),
        }
    }
}

/// Errors raised anywhere in the crate. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square")]
    NonSquare,
    #[error("matrix must have size at least 1")]
    Empty,
    #[error("entry ({row},{col}) is not in {{-1,0,1}}")]
    EntryOutOfRange { row: usize, col: usize },
    #[error("{axis} prefix sum leaves {{0,1}} at ({row},{col})")]
    PrefixSumViolation { axis: Axis, row: usize, col: usize },
    #[error("{axis} {index} does not sum to 1")]
    TotalSumViolation { axis: Axis, index: usize },
    #[error("not a corner sum matrix at ({row},{col}): {reason}")]
    InvalidCornerSum {
        row: usize,
        col: usize,
        reason: &'static str,
    },
    #[error("matrix has a -1 entry and is not a permutation")]
    NotAPermutation,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{what} of size {n} exceeds the default limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("not an edge of the ASM graph: {0}")]
    NotAnEdge(String),
    #[error("matrices are incomparable in ASM order")]
    Incomparable,
    #[error("matrices are comparable; no counterexample exists")]
    Comparable,
    #[error("evaluation undefined: zero entry at ({row},{col}) has a negative exponent")]
    Undefined { row: usize, col: usize },
    #[error("certificate verification failed at step {step:?}: {detail}")]
    VerificationFailure { step: Option<usize>, detail: String },
    #[error("polynomial division is not exact")]
    NonExactDivision,
    #[error("interior minor vanishes")]
    SingularInterior,
    #[error("{0} is not the square of a positive rational")]
    NotAPerfectSquare(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Variant name, as surfaced by the command line tool.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonSquare => "NonSquare",
            Error::Empty => "Empty",
            Error::EntryOutOfRange { .. } => "EntryOutOfRange",
            Error::PrefixSumViolation { .. } => "PrefixSumViolation",
            Error::TotalSumViolation { .. } => "TotalSumViolation",
            Error::InvalidCornerSum { .. } => "InvalidCornerSum",
            Error::NotAPermutation => "NotAPermutation",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::SizeLimitExceeded { .. } => "SizeLimitExceeded",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::NotAnEdge(_) => "NotAnEdge",
            Error::Incomparable => "Incomparable",
            Error::Comparable => "Comparable",
            Error::Undefined { .. } => "Undefined",
            Error::VerificationFailure { .. } => "VerificationFailure",
            Error::NonExactDivision => "NonExactDivision",
            Error::SingularInterior => "SingularInterior",
            Error::NotAPerfectSquare(_) => "NotAPerfectSquare",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Whether the default size guards of exponential operations apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Limit {
    #[default]
    Default,
    Override,
}

impl Limit {
    pub(crate) fn check(self, what: &'static str, n: usize, limit: usize) -> Result<()> {
        if self == Limit::Default && n > limit {
            return Err(Error::SizeLimitExceeded { what, n, limit });
        }
        Ok(())
    }
}

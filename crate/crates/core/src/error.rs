use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Domain and parse errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("a transposition needs two distinct points, got ({0} {0})")]
    EqualPoints(usize),

    #[error("image array is not a bijection of 0..{0}")]
    NotABijection(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown catalog name `{name}`; known names: {known}")]
    UnknownName { name: String, known: String },

    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a brute-force computation declined to finish.
///
/// Refusal is an outcome, not a failure: a refused oracle never returns a
/// partial answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Refusal {
    TooManyTerms { terms: usize, limit: usize },
    StoredPermutations { limit: usize },
    TimeLimit { millis: u128 },
    SearchNodes { limit: usize },
    SupportTooLarge { support: usize, limit: usize },
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::TooManyTerms { terms, limit } => {
                write!(
                    f,
                    "oracle refused: {terms} terms exceeds the cap of {limit}"
                )
            }
            Refusal::StoredPermutations { limit } => {
                write!(f, "oracle refused: more than {limit} stored permutations")
            }
            Refusal::TimeLimit { millis } => {
                write!(f, "oracle refused: time limit of {millis} ms reached")
            }
            Refusal::SearchNodes { limit } => {
                write!(f, "oracle refused: more than {limit} search nodes")
            }
            Refusal::SupportTooLarge { support, limit } => {
                write!(
                    f,
                    "oracle refused: support of size {support} exceeds {limit}"
                )
            }
        }
    }
}

impl std::error::Error for Refusal {}

use thiserror::Error;

use crate::realize::Violation;

/// Errors raised by phrase construction, moves, invariants and realization.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {at}: {msg}")]
    Syntax { at: usize, msg: String },

    #[error("letter {letter} occurs {count} times (expected exactly 2)")]
    NotGauss { letter: String, count: usize },

    #[error("a Gauss phrase needs at least one component")]
    NoComponents,

    #[error("letter {0} has more than one character and cannot be written in compact format")]
    UnrepresentableInCompact(String),

    #[error("unknown letter {0}")]
    UnknownLetter(String),

    #[error("component index {index} out of range 1..={n}")]
    BadIndex { index: usize, n: usize },

    #[error("bad span: {0}")]
    BadSpan(String),

    #[error("letter {0} is not a single-component letter")]
    NotSingleComponent(String),

    #[error("move {site} does not apply: {reason}")]
    InvalidSite { site: String, reason: String },

    #[error("not a permutation of 1..={n}: {perm:?}")]
    BadPermutation { perm: Vec<usize>, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("bad linking matrix: {0}")]
    BadMatrix(String),

    #[error("inadmissible target: {0}")]
    Inadmissible(Violation),

    #[error("cannot decode matrix encoding: {0}")]
    Decode(String),

    #[error("alphabet of size {size} exceeds the letter budget {budget}")]
    OverBudget { size: usize, budget: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

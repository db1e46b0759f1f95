use std::fmt;

use thiserror::Error;

/// Why a computation stopped short of a definite answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inconclusive {
    /// A graded piece above the configured degree cap was needed.
    DegreeBound { needed: i32, cap: i32 },
    /// A homological or search bound ran out.
    SearchBudget(String),
    /// A numerical fit (Hilbert-Samuel, growth) did not stabilize in the window.
    Unstable(String),
}

impl fmt::Display for Inconclusive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inconclusive::DegreeBound { needed, cap } => {
                write!(f, "degree bound: degree {needed} exceeds cap {cap}")
            }
            Inconclusive::SearchBudget(s) => write!(f, "search budget exhausted: {s}"),
            Inconclusive::Unstable(s) => write!(f, "window did not stabilize: {s}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("inconclusive: {0}")]
    Inconclusive(Inconclusive),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("catalog incomplete: {0}")]
    CatalogIncomplete(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_))
    }

    pub(crate) fn degree_bound(needed: i32, cap: i32) -> Self {
        Error::Inconclusive(Inconclusive::DegreeBound { needed, cap })
    }

    pub(crate) fn budget(msg: impl Into<String>) -> Self {
        Error::Inconclusive(Inconclusive::SearchBudget(msg.into()))
    }

    pub(crate) fn unstable(msg: impl Into<String>) -> Self {
        Error::Inconclusive(Inconclusive::Unstable(msg.into()))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::formulas::Var;

/// A parse failure with the 1-based position where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownToken,
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseErrorKind::Syntax => write!(f, "syntax error"),
            ParseErrorKind::UnknownToken => write!(f, "unknown token"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("position {position} is out of range for a chain of size {size}")]
    PositionOutOfRange { position: usize, size: usize },

    #[error("variable `{0}` is not assigned")]
    Unassigned(Var),

    #[error("malformed chain: {0}")]
    MalformedChain(String),

    #[error("malformed EA formula: {0}")]
    MalformedEa(String),

    #[error("scope mismatch: expected {expected}, found {found}")]
    ScopeMismatch { expected: String, found: String },

    #[error("variable `{0}` is not in scope")]
    NotInScope(Var),

    #[error("duplicate variable `{0}` in variable order")]
    DuplicateVariable(Var),

    #[error("expected exactly {expected} free variable(s), found {{{}}}", fmt_vars(.found))]
    Arity {
        expected: usize,
        found: BTreeSet<Var>,
    },

    #[error("Oc_n requires at least one predicate")]
    EmptyOccurrence,

    #[error("translation exceeded the node budget of {budget} (reached {reached})")]
    BudgetExceeded { budget: u64, reached: u64 },
}

fn fmt_vars(vars: &BTreeSet<Var>) -> String {
    vars.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

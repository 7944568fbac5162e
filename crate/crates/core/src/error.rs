use thiserror::Error;

use crate::quiver::Violation;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: expected {expected}, found {found}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("syntax error: {0}")]
    Syntax(#[from] SyntaxError),
    #[error("not a gentle quiver: {}", join_violations(.0))]
    Validation(Vec<Violation>),
    #[error("quiver is not connected")]
    NotConnected,
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// Errors raised by the algebraic and geometric layers.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("quiver is not representation-finite")]
    NotRepFinite,
    #[error("quiver has infinite global dimension")]
    InfiniteGldim,
    #[error("quiver is not a tree")]
    NotATree,
    #[error("projective resolution did not terminate within {0} steps")]
    CapExceeded(usize),
    #[error("multiplicity system is singular")]
    SingularSystem,
    #[error("cannot parse string '{text}': {reason}")]
    BadString { text: String, reason: String },
    #[error("invalid disc: {0}")]
    BadDisc(String),
    #[error("{0} is projective")]
    Projective(String),
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("chord {id} appears {count} times, expected 2")]
    ChordCount { id: u32, count: usize },
    #[error("chord {0} has two endpoints of the same kind")]
    DuplicateKind(u32),
    #[error("sign mismatch for chord {0}")]
    SignMismatch(u32),
    #[error("duplicate circle index {0}")]
    DuplicateCircle(usize),
    #[error("missing circle {0}")]
    MissingCircle(usize),
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("circle counts differ: {0} vs {1}")]
    MuMismatch(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("site out of range: {0}")]
    SiteOutOfRange(String),
    #[error("trace step {step} failed: {source}")]
    Replay { step: usize, source: Box<Error> },
    #[error("trace syntax error at line {line}: {msg}")]
    TraceSyntax { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

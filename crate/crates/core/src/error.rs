use thiserror::Error;

/// Errors raised by the exact engines and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("coefficient table has no row of order {0}")]
    MissingRow(usize),

    #[error("{kind} prefix ends at index {have}, index {need} is required")]
    InsufficientPrefix {
        kind: &'static str,
        have: i64,
        need: i64,
    },

    #[error("wrong sequence kind: expected {expected}, got {got}")]
    WrongKind {
        expected: &'static str,
        got: &'static str,
    },

    #[error("invariant failure: {0}")]
    InvariantFailure(String),

    #[error("singular linear system at column {0}")]
    Singular(usize),

    #[error("unknown backend {0:?} (expected nonlinear, unit, empty, strong or oracle)")]
    UnknownBackend(String),

    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

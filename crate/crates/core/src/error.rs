use thiserror::Error;

/// Errors raised by the workbench.
///
/// `Invariant` is reserved for violated mathematical identities: the CLI maps
/// it to a distinct exit code so that a failing check is never confused with a
/// usage problem.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    Field(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid algebra: {0}")]
    Algebra(String),
    #[error("mismatched algebra or piece: {0}")]
    Mismatch(String),
    #[error("no nilpotency oracle: algebra has no matrix realisation")]
    NoNilpotencyOracle,
    #[error("group too large: closure exceeded cap {cap} ({count} elements found so far)")]
    GroupTooLarge { cap: usize, count: usize },
    #[error("invalid group: {0}")]
    Group(String),
    #[error("piece too large: {0}")]
    PieceTooLarge(String),
    #[error("JM failure: {0}")]
    JmFailure(String),
    #[error("p too small for this triple: {0}")]
    PTooSmall(String),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("type A only: {0}")]
    TypeAOnly(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

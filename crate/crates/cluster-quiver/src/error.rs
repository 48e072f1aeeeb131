use thiserror::Error;

/// Errors produced by quiver construction and the function algebra.
#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("arrow weight must be at least 1")]
    BadWeight,
    #[error("oriented cycle detected through vertex `{0}`")]
    CycleDetected(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("operands live on different quivers")]
    MismatchedQuivers,
    #[error("operation requires a simply laced Dynkin quiver")]
    NonDynkin,
    #[error(
        "hammock support exceeded the budget of {budget} vertices (support is likely infinite)"
    )]
    BudgetExceeded { budget: usize },
    #[error("missing value for vertex {0}")]
    MissingValue(String),
    #[error("vertex {0} is not a source or sink of the slice")]
    NotSourceOrSink(String),
    #[error("assignment is not a slice: {0}")]
    InvalidSlice(String),
    #[error("vertex {0} is not a member of the set")]
    NotAMember(String),
    #[error("set is not partial tilting: {0}")]
    NotPartialTilting(String),
    #[error("window too large for DOT export ({0} vertices, limit {1})")]
    WindowTooLarge(usize, usize),
    #[error("shape does not fit the quiver: {0}")]
    ShapeAbsent(String),
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),
    #[error("hypothesis not satisfied (instance skipped): {0}")]
    HypothesisNotMet(String),
    #[error("anomaly: {0}")]
    Anomaly(String),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relations force a cycle through `{0}`")]
    CycleDetected(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("generator set is empty")]
    EmptyGenerator,
    #[error("subset is empty")]
    EmptySubset,
    #[error("size {size} exceeds the configured limit {limit}")]
    SizeBudgetExceeded { size: usize, limit: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("`{0}` is no longer a beat point")]
    StaleBeatPoint(String),
    #[error("expected height {expected}, found {found}")]
    HeightMismatch { expected: usize, found: usize },
    #[error("space is disconnected")]
    Disconnected,
    #[error("vertex set is not dominating: `{0}` has no neighbour in it")]
    NotDominating(String),
    #[error("cover member {0} has a component that is not contractible")]
    IncompatibleCover(usize),
    #[error("vertex `{0}` lies in no hyperedge")]
    UncoverableVertex(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

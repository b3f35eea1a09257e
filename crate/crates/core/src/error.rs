use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("no edges")]
    NoEdges,

    #[error("edge instance {0} is not in the graph")]
    UnknownInstance(String),

    #[error("instance too large: {0}")]
    LimitExceeded(String),

    #[error("minor search budget exceeded")]
    BudgetExceeded,

    #[error("not a matching: {0}")]
    NotAMatching(String),

    #[error("degenerate perturbation")]
    DegeneratePerturbation,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

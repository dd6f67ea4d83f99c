use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse system descriptor {0:?}")]
    UnknownSystem(String),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("generator {0} out of range")]
    BadGenerator(i64),
    #[error("elements belong to different Coxeter systems")]
    MixedSystems,
    #[error("operation needs a finite Coxeter group")]
    InfiniteSystem,
    #[error("permutation is not a diagram automorphism")]
    NotAutomorphism,
    #[error("element is not in the interval")]
    NotInInterval,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Failure modes shared by every solver in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid triangle: {0}")]
    InvalidTriangle(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("infeasible cone: {0}")]
    InfeasibleCone(String),
    #[error("unattainable area: {0}")]
    UnattainableArea(String),
    #[error("configuration leaves the quarter sphere about O: {0}")]
    QuarterSphereViolation(String),
    #[error("invalid cevian configuration: {0}")]
    InvalidConfig(String),
    #[error("cevian lengths violate the concurrency identity (gap {0:e})")]
    IdentityViolated(f64),
    #[error("no realization found: {0}")]
    NoRealization(String),
    #[error("degenerate chain: {0}")]
    DegenerateChain(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
}

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Invalid,
    NoSolution,
    Degenerate,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidTriangle(_)
            | Error::InvalidInput(_)
            | Error::QuarterSphereViolation(_)
            | Error::InvalidConfig(_)
            | Error::IdentityViolated(_) => ErrorKind::Invalid,
            Error::NoSolution(_)
            | Error::InfeasibleCone(_)
            | Error::UnattainableArea(_)
            | Error::NoRealization(_) => ErrorKind::NoSolution,
            Error::DegenerateInput(_)
            | Error::DegenerateChain(_)
            | Error::DegenerateConfiguration(_) => ErrorKind::Degenerate,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

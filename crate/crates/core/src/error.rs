use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("quadrature failure: {0}")]
    Quadrature(String),

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("no sign change of psi found: {0}")]
    Infeasible(String),

    #[error("univalence check failed: {0}")]
    Univalence(String),

    #[error("boundary data: {0}")]
    BoundaryData(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

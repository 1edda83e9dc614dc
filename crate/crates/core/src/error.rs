use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where a quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Quadrature, finite differencing or a mode sum failed its own accuracy check.
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("no lateral force: the first-order lateral amplitude vanishes")]
    NoLateralForce,
}

impl Error {
    /// True for failures caused by the caller's inputs rather than the numerics.
    pub fn is_argument_error(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::InvalidArgument(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("sector dimension {dim} exceeds the cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("eigensolver did not converge after {iterations} iterations (best residual {residual:.3e})")]
    NotConverged { iterations: usize, residual: f64 },

    /// A quantity that must be real and non-negative in exact arithmetic came
    /// out with a large imaginary or negative part.
    #[error("numerical integrity violated: {0}")]
    NumericalIntegrity(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

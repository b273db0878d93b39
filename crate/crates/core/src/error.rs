use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^H| = {max_asymmetry:e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("non-finite value at component {index}")]
    NonFinite { index: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("coefficient matrix is rank deficient (sigma_min / sigma_max = {ratio:e})")]
    SingularProtocol { ratio: f64 },

    #[error("reconstructed trace {trace:e} is too small to normalize")]
    DegenerateData { trace: f64 },

    #[error("state is not physical: {0}")]
    NonPhysical(String),

    #[error("unknown polarization label {0:?}")]
    UnknownPolarization(String),

    #[error("unknown protocol {0:?}")]
    UnknownProtocol(String),

    #[error("row {row}: expected {expected} raw counts, got {actual}")]
    ArityMismatch { row: usize, expected: usize, actual: usize },

    #[error("row {row}: negative raw count {value}")]
    NegativeCount { row: usize, value: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("triangle inequality violated by {excess:e}")]
    TriangleInequality { excess: f64 },

    #[error("{path}: {message}")]
    Fixture { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn fixture(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Fixture {
            path: path.into(),
            message: message.into(),
        }
    }
}

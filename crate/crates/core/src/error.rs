use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ensemble dimensions: N={n}, M={m} (both must be at least 1)")]
    InvalidDims { n: usize, m: usize },

    #[error("{what} dimension {dim} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, dim: u128, cap: u128 },

    #[error("Fock configuration {config:?} is not valid for N={n}, M={m}")]
    InvalidConfig { config: Vec<usize>, n: usize, m: usize },

    #[error("ensemble index {index} out of range for M={count}")]
    EnsembleIndex { index: usize, count: usize },

    #[error("ensemble indices must be distinct, got {0:?}")]
    DuplicateEnsemble(Vec<usize>),

    #[error("rotation matrix built for N={matrix} applied to ensembles of N={state}")]
    RotationSize { matrix: usize, state: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("path count {paths} exceeds the enumeration cap of {cap}")]
    PathCapExceeded { paths: u128, cap: u128 },

    #[error("every sampled path product vanished; the estimate cannot be normalized")]
    DegenerateEstimate,

    #[error("{}:{line}: {message} (entry `{entry}`)", path.display())]
    Parse { path: PathBuf, line: usize, entry: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

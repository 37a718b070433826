use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operator acts on {n_qubits} qubits, above the cap of {cap}")]
    QubitCapExceeded { n_qubits: usize, cap: usize },

    #[error("site index {site} out of range for {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("site {0} appears more than once in a Pauli term")]
    RepeatedSite(usize),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("swap pairs overlap at site {0}")]
    OverlappingPairs(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("Hermitian eigendecomposition failed: {0}")]
    Eigensolver(String),

    #[error("operator is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("operator does not commute (residual {residual:.3e} > {tol:.1e})")]
    NotCommuting { residual: f64, tol: f64 },

    #[error("propagation failed at t = {time} ns: {reason}")]
    Propagation { time: f64, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

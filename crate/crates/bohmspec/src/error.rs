//! Crate-wide error type and result alias.

use thiserror::Error;

/// Unified error for library and CLI operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation
    /// (non-positive envelope, modulation outside the validity window,
    /// classically forbidden energy, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// A grid was malformed or too coarse for the requested integration.
    #[error("grid error: {0}")]
    Grid(String),

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: achieved {achieved:.3e}, requested {requested:.3e}")]
    Quadrature { achieved: f64, requested: f64 },

    /// A scenario configuration was rejected; `path` names the offending key.
    #[error("config error at `{path}`: {reason}")]
    Config { path: String, reason: String },

    /// Filesystem failure while emitting outputs.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn grid(msg: impl Into<String>) -> Self {
        Error::Grid(msg.into())
    }

    pub(crate) fn config(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

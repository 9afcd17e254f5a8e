//! Error types shared across the library.

use thiserror::Error;

/// Errors produced by geometry validation and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of a special function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A geometry is degenerate or singular for the requested formula.
    #[error("singular geometry: {0}")]
    SingularGeometry(String),

    /// The homogenization validity condition (spacing < half wavelength) is violated.
    #[error("validity condition violated: {0}")]
    Validity(String),

    /// An iterative or truncated numerical scheme failed to reach its tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

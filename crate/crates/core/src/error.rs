use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An index (eigenvalue position, partition length, ...) is out of range.
    #[error("index error: {0}")]
    Index(String),

    /// A series parameter annihilates a denominator within the truncation range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A series cannot converge for the given inputs.
    #[error("divergence error: {0}")]
    Divergent(String),

    /// The request exceeds configured resource limits.
    #[error("resource error: {0}")]
    Resource(String),

    /// Inputs are degenerate (coincident eigenvalues) for a density that
    /// requires distinct values.
    #[error("degeneracy error: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

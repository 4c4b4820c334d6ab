//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    /// Bad input: malformed config, mismatched grids, invalid parameters.
    #[error("configuration error: {0}")]
    Config(String),

    /// Operation requested outside its mathematical domain
    /// (e.g. an energy inside the forbidden band).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure failed to converge or produced non-finite
    /// values; the message carries diagnostics.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A grid or discretization is too coarse for the requested evaluation.
    #[error("refinement required: {0}")]
    Refinement(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl LabError {
    /// Process exit code used by the CLI: config errors exit 2, numerical
    /// failures exit 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) | LabError::Domain(_) => 2,
            LabError::Numerical(_) | LabError::Refinement(_) => 3,
            LabError::Io(_) | LabError::Json(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;

use thiserror::Error;

/// Errors from group descriptions and representation-ring arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("unsupported group: {0}")]
    Unsupported(String),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("invalid inclusion data: {0}")]
    InvalidInclusion(String),
    #[error("non-integral decomposition: {0}")]
    NonIntegralDecomposition(String),
    #[error("inconsistent finite action: {0}")]
    InconsistentAction(String),
    #[error("label outside window: {0}")]
    OutsideWindow(String),
    #[error("invalid action data: {0}")]
    InvalidAction(String),
}

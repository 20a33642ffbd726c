use crate::groups::GroupError;

#[derive(Debug, thiserror::Error)]
pub enum ResolutionError {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid local system: {0}")]
    InvalidSystem(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

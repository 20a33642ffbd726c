use thiserror::Error;

use crate::cochain::CochainError;
use crate::groups::GroupError;
use crate::resolution::ResolutionError;

/// Errors surfaced by the theory calculators.
#[derive(Debug, Error)]
pub enum TheoryError {
    /// The space failed structural validation; the message lists every problem.
    #[error("space does not validate: {0}")]
    InvalidSpace(String),
    /// The request is outside the modeled scope (e.g. direct K-theory over
    /// non-contractible strata).
    #[error("{0}")]
    OutOfScope(String),
    /// An input class was expected to be a cocycle of the compatibility complex.
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    /// A fixed-point residue survived: the data does not assemble to a global class.
    #[error("localization obstruction: {0}")]
    Obstruction(String),
    /// Malformed input data (shape or parameter misuse).
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

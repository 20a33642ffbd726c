use thiserror::Error;

use crate::groups::GroupError;
use crate::resolution::ResolutionError;

#[derive(Debug, Error)]
pub enum CochainError {
    /// The coefficient system is not flat: the induced differential fails d² = 0,
    /// witnessed on the named cell.
    #[error("coefficient system is not flat: d² ≠ 0 at cell {cell}")]
    NotFlat { cell: usize },

    /// A declared map fails to commute with the differentials at the named degree.
    #[error("map is not a chain map at degree {degree}")]
    NotChainMap { degree: usize },

    /// The differentials of a hand-assembled complex do not compose to zero.
    #[error("differential does not square to zero at degree {degree}")]
    DifferentialSquare { degree: usize },

    /// les_check inputs do not form a degreewise short exact sequence.
    #[error("not a short exact sequence: {0}")]
    NotShortExact(String),

    /// relative_complex was asked to zero out a set of parts that is not closed upward.
    #[error("relative part set is not upward-closed: {0}")]
    NotUpwardClosed(String),

    /// Structural mismatch (shapes, indices, inconsistent data).
    #[error("invalid cochain data: {0}")]
    Invalid(String),

    /// The requested operation is outside the supported scope.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Group(#[from] GroupError),

    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

//! Delocalized equivariant cohomology: the same compatibility complex with windowed
//! representation-ring coefficients, graded over ℤ₂.

use crate::cochain::{cohomology, pullback_complex};
use crate::resolution::ResolutionSpace;

use super::assemble::{assemble_complex, ensure_valid, Coefficients};
use super::error::TheoryError;
use super::result::{Grading, Theory, TheoryResult};

/// Even/odd dimensions of the delocalized cohomology at the given weight window.
pub fn delocalized_cohomology(
    s: &ResolutionSpace,
    window: usize,
) -> Result<TheoryResult, TheoryError> {
    ensure_valid(s)?;
    let assembled = assemble_complex(s, Coefficients::Rep(window))?;
    let pb = pullback_complex(&assembled.total, &assembled.parts)?;
    let h = cohomology(pb.complex());
    Ok(TheoryResult {
        theory: Theory::Delocalized,
        space: s.name.clone(),
        grading: Grading::TwoPeriodic,
        dims: vec![h.even_dim(), h.odd_dim()],
        max_degree: None,
        window: Some(window),
        torsion: Vec::new(),
        note: None,
    })
}

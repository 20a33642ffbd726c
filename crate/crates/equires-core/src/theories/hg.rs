//! Equivariant cohomology on the quotient side: for each polynomial degree j the
//! compatibility complex with degree-j Borel coefficients is assembled and its
//! cohomology contributes to total degree q = 2j + k.

use crate::cochain::{cohomology, pullback_complex};
use crate::resolution::ResolutionSpace;

use super::assemble::{assemble_complex, ensure_valid, Coefficients};
use super::error::TheoryError;
use super::result::{Grading, Theory, TheoryResult};

/// Dimensions of the equivariant cohomology in degrees 0..=max_degree. The polynomial
/// coefficient degree j is a direct summand: H^q = ⊕_{2j+k=q} H^k(complex with Borel-j
/// coefficients), assembled degree by degree.
pub fn equivariant_cohomology(
    s: &ResolutionSpace,
    max_degree: usize,
) -> Result<TheoryResult, TheoryError> {
    ensure_valid(s)?;
    let mut dims = vec![0usize; max_degree + 1];
    for j in 0..=max_degree / 2 {
        let assembled = assemble_complex(s, Coefficients::Borel(j))?;
        let pb = pullback_complex(&assembled.total, &assembled.parts)?;
        let h = cohomology(pb.complex());
        for q in 2 * j..=max_degree {
            let k = q - 2 * j;
            if k < h.dims.len() {
                dims[q] += h.dims[k];
            }
        }
    }
    Ok(TheoryResult {
        theory: Theory::EquivariantCohomology,
        space: s.name.clone(),
        grading: Grading::Integer,
        dims,
        max_degree: Some(max_degree),
        window: None,
        torsion: Vec::new(),
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupDesc;
    use crate::resolution::{
        build_free_action, build_mobius_example, build_sphere_rotation, build_trivial_action,
        circle_loop, circle_sphere_inclusion, z2_sphere_inclusion,
    };

    #[test]
    fn sphere_dimensions_match_the_equalizer_model() {
        let s = build_sphere_rotation(circle_sphere_inclusion()).unwrap();
        let r = equivariant_cohomology(&s, 6).unwrap();
        assert_eq!(r.dims, vec![1, 0, 2, 0, 2, 0, 2]);
    }

    #[test]
    fn sphere_with_z2_kernel_has_the_same_rational_shape() {
        let s = build_sphere_rotation(z2_sphere_inclusion()).unwrap();
        let r = equivariant_cohomology(&s, 6).unwrap();
        // The extra finite factor contributes no invariant polynomials, so the Borel
        // side agrees with the plain circle computation.
        assert_eq!(r.dims, vec![1, 0, 2, 0, 2, 0, 2]);
    }

    #[test]
    fn trivial_circle_action_tensors_the_polynomial_ring() {
        let s = build_trivial_action(GroupDesc::circle(), circle_loop());
        let r = equivariant_cohomology(&s, 4).unwrap();
        assert_eq!(r.dims, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn free_action_reduces_to_the_quotient() {
        let s = build_free_action(GroupDesc::Finite(crate::groups::cyclic(2)), circle_loop());
        let r = equivariant_cohomology(&s, 4).unwrap();
        assert_eq!(r.dims, vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn mobius_kills_middle_degrees() {
        let s = build_mobius_example();
        let r = equivariant_cohomology(&s, 5).unwrap();
        assert_eq!(r.dims, vec![1, 1, 0, 0, 1, 1]);
    }

    #[test]
    fn invalid_spaces_are_refused() {
        let mut s = build_sphere_rotation(circle_sphere_inclusion()).unwrap();
        s.strata[1].face = vec![0];
        let err = equivariant_cohomology(&s, 2).unwrap_err();
        assert!(matches!(err, TheoryError::InvalidSpace(_)));
    }
}

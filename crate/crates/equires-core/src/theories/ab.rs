//! Fixed-point push-forward to a point for circle-type actions with isolated fixed
//! points: each fixed point contributes its localized class divided by the Euler class
//! of its normal weight, and the sum must clear the pole for the answer to be a
//! polynomial on the quotient.

use num::Zero;

use crate::groups::{invariant_poly_basis, InvPoly};
use crate::linalg::{Int, Rat};

use super::error::TheoryError;

/// Push-forward of equivariant classes localized at isolated fixed points. Each entry
/// is the restriction of the class to one fixed point together with the integer weight
/// of the normal rotation there. The result is graded so that its degree-`j` component
/// collects the degree-`j+1` contributions divided by the weights; the degree-`-1`
/// residues must cancel, otherwise the class has no polynomial push-forward.
pub fn ab_pushforward(
    points: &[(InvPoly, Int)],
    max_degree: usize,
) -> Result<InvPoly, TheoryError> {
    if points.is_empty() {
        return Err(TheoryError::Invalid(
            "the push-forward needs at least one fixed point".into(),
        ));
    }
    let group = &points[0].0.group;
    if group.lie_dim() != 1 {
        return Err(TheoryError::Invalid(
            "the push-forward formula needs a one-dimensional acting group".into(),
        ));
    }
    for j in 0..=max_degree + 1 {
        if invariant_poly_basis(group, j)?.dim() != 1 {
            return Err(TheoryError::Invalid(
                "the invariant ring must have a single generator in every degree".into(),
            ));
        }
    }
    for (f, w) in points {
        if !f.group.same_group(group) {
            return Err(TheoryError::Invalid(
                "fixed-point data uses mismatched groups".into(),
            ));
        }
        if w.is_zero() {
            return Err(TheoryError::Invalid(
                "a fixed point with zero normal weight is not isolated".into(),
            ));
        }
    }

    let mut residue = Rat::zero();
    for (f, w) in points {
        let c0 = f.component(0).first().cloned().unwrap_or_else(Rat::zero);
        residue += c0 / Rat::from(w.clone());
    }
    if !residue.is_zero() {
        return Err(TheoryError::Obstruction(format!(
            "the fixed-point contributions leave a pole of residue {residue}"
        )));
    }

    let mut out = InvPoly::zero(group, max_degree)?;
    for (f, w) in points {
        let wr = Rat::from(w.clone());
        for j in 0..=max_degree {
            if j + 1 > f.max_degree {
                break;
            }
            let c = f.component(j + 1).first().cloned().unwrap_or_else(Rat::zero);
            if !c.is_zero() {
                out.components[j][0] += c / wr.clone();
            }
        }
    }
    Ok(out)
}

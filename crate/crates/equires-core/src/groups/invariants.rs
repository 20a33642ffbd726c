//! Invariant submodules of finite-group actions on free modules.

use crate::linalg::{frac, Int, QMat, Rat, ZMat};

use super::error::GroupError;
use super::finite::FiniteGroup;

/// Canonical rational basis of the common fixed space of a list of square matrices:
/// the kernel of the stacked `(M - I)`.
pub fn invariant_subspace(mats: &[QMat]) -> Result<Vec<Vec<Rat>>, GroupError> {
    let n = match mats.first() {
        None => {
            return Err(GroupError::InvalidAction(
                "no matrices supplied; the ambient dimension is unknown".into(),
            ))
        }
        Some(m) => m.nrows(),
    };
    let mut stacked = QMat::zero(0, n);
    for m in mats {
        if m.nrows() != n || m.ncols() != n {
            return Err(GroupError::InvalidAction(format!(
                "action matrix is {}x{}, expected {n}x{n}",
                m.nrows(),
                m.ncols()
            )));
        }
        stacked = stacked.vstack(&m.sub(&QMat::identity(n)));
    }
    Ok(stacked.kernel_basis())
}

/// Basis of the saturated invariant sublattice of integer matrices: the integer kernel of
/// the stacked `(M - I)`, via Smith normal form.
pub fn invariant_sublattice(mats: &[ZMat]) -> Result<Vec<Vec<Int>>, GroupError> {
    let n = match mats.first() {
        None => {
            return Err(GroupError::InvalidAction(
                "no matrices supplied; the ambient dimension is unknown".into(),
            ))
        }
        Some(m) => m.nrows(),
    };
    let mut stacked = ZMat::zero(0, n);
    for m in mats {
        if m.nrows() != n || m.ncols() != n {
            return Err(GroupError::InvalidAction(format!(
                "action matrix is {}x{}, expected {n}x{n}",
                m.nrows(),
                m.ncols()
            )));
        }
        stacked = stacked.vstack(&m.sub(&ZMat::identity(n)));
    }
    Ok(crate::linalg::integer_kernel_basis(&stacked))
}

/// Invariants of a verified linear action of a finite group: `rho[g]` is the matrix of
/// element `g`. Verifies the assignment is a homomorphism, then returns the canonical
/// basis of the fixed space together with the averaging projector.
pub fn finite_invariants(
    f: &FiniteGroup,
    rho: &[QMat],
) -> Result<(Vec<Vec<Rat>>, QMat), GroupError> {
    if rho.len() != f.order() {
        return Err(GroupError::InconsistentAction(format!(
            "{} matrices supplied for a group of order {}",
            rho.len(),
            f.order()
        )));
    }
    let n = rho[0].nrows();
    for (g, m) in rho.iter().enumerate() {
        if m.nrows() != n || m.ncols() != n {
            return Err(GroupError::InconsistentAction(format!(
                "matrix of element {g} is {}x{}, expected {n}x{n}",
                m.nrows(),
                m.ncols()
            )));
        }
    }
    if rho[f.identity()] != QMat::identity(n) {
        return Err(GroupError::InconsistentAction(
            "identity element must act as the identity matrix".into(),
        ));
    }
    for a in 0..f.order() {
        for b in 0..f.order() {
            if rho[f.mul(a, b)] != rho[a].mul(&rho[b]) {
                return Err(GroupError::InconsistentAction(format!(
                    "matrices violate the multiplication table at ({a}, {b})"
                )));
            }
        }
    }
    let mut sum = QMat::zero(n, n);
    for m in rho {
        sum = sum.add(m);
    }
    let projector = sum.scale(&frac(1, f.order() as i64));
    let basis = invariant_subspace(rho)?;
    Ok((basis, projector))
}

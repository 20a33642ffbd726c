//! Assembly of the compatibility data of a resolved space with a chosen coefficient
//! family: the total cochain complex, one constraint part per stratum (restriction of
//! the total complex to the face against the fibration pullback from the stratum base),
//! and the layouts tying coordinates back to cells and fiber elements.

use num::One;

use crate::cochain::{cochain_complex, ChainMap, CochainLayout, Complex, PullbackPart};
use crate::groups::{invariant_poly_basis, poly_restriction_matrix};
use crate::linalg::{QMat, Rat, ZMat};
use crate::resolution::{
    borel_system, rep_system, validate_resolution, LocalSystem, ResolutionSpace, StratumRef,
};

use super::error::TheoryError;

/// Coefficient family of a compatibility complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// Invariant polynomials of the given degree on each isotropy Lie algebra.
    Borel(usize),
    /// Windowed irreducible labels of each isotropy group.
    Rep(usize),
}

/// The assembled compatibility data: feed `total` and `parts` to
/// [`crate::cochain::pullback_complex`] or [`crate::cochain::les_suite`]. Ambient
/// degree-q coordinates are ordered [total block, stratum 0 block, ...], each block laid
/// out by its `CochainLayout`.
#[derive(Clone, Debug)]
pub struct Assembled {
    pub total: Complex,
    pub total_layout: CochainLayout,
    pub parts: Vec<PullbackPart>,
    pub base_layouts: Vec<CochainLayout>,
    /// (deeper, shallower) stratum index pairs from the declared triangles, for
    /// upward-closure checks of relative part sets.
    pub order: Vec<(usize, usize)>,
}

impl Assembled {
    /// Starting offsets of the [total, stratum 0, ...] blocks in ambient degree-q
    /// coordinates, with the ambient dimension appended.
    pub fn ambient_offsets(&self, q: usize) -> Vec<usize> {
        let mut offs = vec![0, self.total.rank(q)];
        for part in &self.parts {
            offs.push(offs.last().unwrap() + part.base.rank(q));
        }
        offs
    }
}

/// Errors with the full validation report unless the space is structurally sound.
pub(crate) fn ensure_valid(s: &ResolutionSpace) -> Result<(), TheoryError> {
    let report = validate_resolution(s);
    if report.is_valid() {
        Ok(())
    } else {
        Err(TheoryError::InvalidSpace(report.problems.join("; ")))
    }
}

fn system_of(
    s: &ResolutionSpace,
    r: StratumRef,
    coeff: Coefficients,
) -> Result<LocalSystem, TheoryError> {
    Ok(match coeff {
        Coefficients::Borel(j) => borel_system(s, r, j)?.0,
        Coefficients::Rep(w) => rep_system(s, r, w)?.0,
    })
}

/// The coefficient comparison map of a stratum: from the stratum fiber into the
/// principal fiber, through the inclusion of isotropy groups.
fn comparison_fiber_matrix(
    s: &ResolutionSpace,
    stratum: usize,
    coeff: Coefficients,
) -> Result<QMat, TheoryError> {
    let st = &s.strata[stratum];
    match coeff {
        Coefficients::Borel(j) => {
            let big = invariant_poly_basis(&st.group, j)?;
            let small = invariant_poly_basis(&s.principal_group, j)?;
            Ok(poly_restriction_matrix(&big, &small, &st.inclusion.lie_matrix())?)
        }
        Coefficients::Rep(w) => Ok(rationalize(&st.inclusion.label_matrix(w)?)),
    }
}

pub(crate) fn rationalize(z: &ZMat) -> QMat {
    let mut m = QMat::zero(z.nrows(), z.ncols());
    for (r, row) in z.rows().enumerate() {
        for (c, v) in row {
            m.add_entry(r, *c, Rat::from(v.clone()));
        }
    }
    m
}

/// Builds the compatibility data of the space with the chosen coefficients. Assumes the
/// space has already been validated; chain-map failures of the fibration data are still
/// reported when the parts are assembled into a pullback complex.
pub fn assemble_complex(
    s: &ResolutionSpace,
    coeff: Coefficients,
) -> Result<Assembled, TheoryError> {
    let total_sys = system_of(s, StratumRef::Principal, coeff)?;
    let (total, total_layout) = cochain_complex(&s.total, &total_sys)?;
    let m_tot = total_sys.dim();

    let mut parts = Vec::with_capacity(s.strata.len());
    let mut base_layouts = Vec::with_capacity(s.strata.len());
    for (i, st) in s.strata.iter().enumerate() {
        let base_sys = system_of(s, StratumRef::Stratum(i), coeff)?;
        let (base, base_layout) = cochain_complex(&st.base, &base_sys)?;

        let (face_complex, translate) = s.total.subcomplex(&st.face)?;
        let mut original = vec![0usize; face_complex.len()];
        for (&old, &new) in &translate {
            original[new] = old;
        }
        // The face inherits the total system along the id translation (the subcomplex
        // keeps boundary entries in order).
        let transports: Vec<Vec<QMat>> = (0..face_complex.len())
            .map(|new| {
                (0..face_complex.cell(new).boundary.len())
                    .map(|k| total_sys.transport(original[new], k).clone())
                    .collect()
            })
            .collect();
        let face_sys = LocalSystem::new(&face_complex, m_tot, transports)?;
        let (face, face_layout) = cochain_complex(&face_complex, &face_sys)?;

        let mut restriction = Vec::with_capacity(face.len());
        let mut comparison = Vec::with_capacity(face.len());
        let rho = comparison_fiber_matrix(s, i, coeff)?;
        let m_base = base_sys.dim();
        debug_assert_eq!((rho.nrows(), rho.ncols()), (m_tot, m_base));
        for q in 0..face.len() {
            let mut r_block = QMat::zero(face.rank(q), total.rank(q));
            let mut c_block = QMat::zero(face.rank(q), base.rank(q));
            for (idx, &c_new) in face_layout.cells(q).iter().enumerate() {
                let old = original[c_new];
                let (_, off) = total_layout
                    .position(old)
                    .expect("face cell exists in the total complex");
                for t in 0..m_tot {
                    r_block.set(idx * m_tot + t, off + t, Rat::one());
                }
                let img = st.fibration.image[c_new];
                if st.base.cell(img).dim == q {
                    let (_, boff) = base_layout
                        .position(img)
                        .expect("fibration image exists in the base");
                    for (rr, row) in rho.rows().enumerate() {
                        for (cc, v) in row {
                            c_block.add_entry(idx * m_tot + rr, boff + *cc, v.clone());
                        }
                    }
                }
            }
            restriction.push(r_block);
            comparison.push(c_block);
        }
        parts.push(PullbackPart {
            face,
            base,
            restriction: ChainMap::new(restriction),
            comparison: ChainMap::new(comparison),
        });
        base_layouts.push(base_layout);
    }

    let order = s.triangles.iter().map(|t| (t.deeper, t.shallower)).collect();
    Ok(Assembled {
        total,
        total_layout,
        parts,
        base_layouts,
        order,
    })
}

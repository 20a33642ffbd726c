//! Equivariant K-theory in the direct model: over spaces whose stratum components are
//! all contractible, a class is a compatible tuple of windowed representation-ring
//! elements — a flat integer 0-cochain on the total complex and each stratum base,
//! subject to the fibration compatibility on every face vertex.

use num::Zero;

use crate::cochain::Complex;
use crate::groups::{IrredLabel, RepRingElem};
use crate::linalg::{integer_kernel_basis, Int, QMat, ZMat};
use crate::resolution::{rep_system, CellComplex, ResolutionSpace, StratumRef};

use super::assemble::{assemble_complex, ensure_valid, Assembled, Coefficients};
use super::error::TheoryError;
use super::result::{Grading, Theory, TheoryResult};

/// A K-theory generator: the raw integer coordinates in the degree-0 ambient layout
/// [total block, stratum 0 block, ...], plus the decoded representation-ring elements,
/// one per connected component of each complex (evaluated at its smallest vertex).
#[derive(Clone, Debug)]
pub struct KClass {
    pub vector: Vec<Int>,
    pub total: Vec<RepRingElem>,
    pub strata: Vec<Vec<RepRingElem>>,
}

pub(crate) const K_SCOPE_MESSAGE: &str =
    "K-theory direct model unavailable; use Chern isomorphism";

const K1_NOTE: &str =
    "K^1 = 0 in this model; odd classes appear through the odd delocalized cohomology";

fn integral(m: &QMat) -> Result<ZMat, TheoryError> {
    let mut z = ZMat::zero(m.nrows(), m.ncols());
    for (r, row) in m.rows().enumerate() {
        for (c, v) in row {
            if !v.is_integer() {
                return Err(TheoryError::Invalid(format!(
                    "constraint entry {v} at ({r}, {c}) is not an integer"
                )));
            }
            z.add_entry(r, *c, v.to_integer());
        }
    }
    Ok(z)
}

/// The stacked integer constraint matrix over degree-0 ambient coordinates: fibration
/// compatibility rows for every face vertex, then flat-section rows (the twisted
/// differential) for the total complex and each base.
pub(crate) fn k_constraint_matrix(a: &Assembled) -> Result<ZMat, TheoryError> {
    let offs = a.ambient_offsets(0);
    let ambient = *offs.last().unwrap();
    let mut stacked = QMat::zero(0, ambient);
    for (i, part) in a.parts.iter().enumerate() {
        let r = part.restriction.block(0, part.face.rank(0), a.total.rank(0));
        let p = part.comparison.block(0, part.face.rank(0), part.base.rank(0));
        let mut block = QMat::zero(part.face.rank(0), ambient);
        for (row, entries) in r.rows().enumerate() {
            for (c, v) in entries {
                block.add_entry(row, *c, v.clone());
            }
        }
        for (row, entries) in p.rows().enumerate() {
            for (c, v) in entries {
                block.add_entry(row, offs[i + 1] + *c, -v.clone());
            }
        }
        stacked = stacked.vstack(&block);
    }
    let flat = |complex: &Complex, col_off: usize, stacked: QMat| -> QMat {
        let d = complex.diff(0);
        let mut block = QMat::zero(d.nrows(), ambient);
        for (row, entries) in d.rows().enumerate() {
            for (c, v) in entries {
                block.add_entry(row, col_off + *c, v.clone());
            }
        }
        stacked.vstack(&block)
    };
    stacked = flat(&a.total, 0, stacked);
    for (i, part) in a.parts.iter().enumerate() {
        stacked = flat(&part.base, offs[i + 1], stacked);
    }
    integral(&stacked)
}

fn decode(
    coords: &[Int],
    labels: &[IrredLabel],
    complex: &CellComplex,
    layout: &crate::cochain::CochainLayout,
    block_off: usize,
) -> Vec<RepRingElem> {
    let comps = complex.components();
    let count = comps.iter().copied().max().map(|m| m + 1).unwrap_or(0);
    (0..count)
        .map(|comp| {
            let Some(&vertex) = layout.cells(0).iter().find(|&&c| comps[c] == comp) else {
                return RepRingElem::zero();
            };
            let (_, off) = layout.position(vertex).expect("vertex is in the layout");
            let mut e = RepRingElem::zero();
            for (t, l) in labels.iter().enumerate() {
                let c = &coords[block_off + off + t];
                if !c.is_zero() {
                    e.add_term(l.clone(), c.clone());
                }
            }
            e
        })
        .collect()
}

/// K⁰ at the given window as rank plus invariant factors (the kernel of an integer
/// matrix is saturated, hence torsion-free), together with its generating classes.
/// K¹ is reported as 0 with a provenance note. Requires the contractible-strata flag.
pub fn k_theory(
    s: &ResolutionSpace,
    window: usize,
) -> Result<(TheoryResult, Vec<KClass>), TheoryError> {
    ensure_valid(s)?;
    if !s.contractible_strata {
        return Err(TheoryError::OutOfScope(K_SCOPE_MESSAGE.to_string()));
    }
    let assembled = assemble_complex(s, Coefficients::Rep(window))?;
    let constraints = k_constraint_matrix(&assembled)?;
    let kernel = integer_kernel_basis(&constraints);

    let labels_total = rep_system(s, StratumRef::Principal, window)?.1;
    let labels_strata: Vec<Vec<IrredLabel>> = (0..s.strata.len())
        .map(|i| Ok(rep_system(s, StratumRef::Stratum(i), window)?.1))
        .collect::<Result<_, TheoryError>>()?;
    let offs = assembled.ambient_offsets(0);
    let classes: Vec<KClass> = kernel
        .into_iter()
        .map(|vector| {
            let total = decode(
                &vector,
                &labels_total,
                &s.total,
                &assembled.total_layout,
                offs[0],
            );
            let strata = s
                .strata
                .iter()
                .enumerate()
                .map(|(i, st)| {
                    decode(
                        &vector,
                        &labels_strata[i],
                        &st.base,
                        &assembled.base_layouts[i],
                        offs[i + 1],
                    )
                })
                .collect();
            KClass {
                vector,
                total,
                strata,
            }
        })
        .collect();

    let result = TheoryResult {
        theory: Theory::KTheory,
        space: s.name.clone(),
        grading: Grading::TwoPeriodic,
        dims: vec![classes.len(), 0],
        max_degree: None,
        window: Some(window),
        torsion: Vec::new(),
        note: Some(K1_NOTE.to_string()),
    };
    Ok((result, classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupDesc;
    use crate::resolution::{
        build_free_action, build_sphere_rotation, build_trivial_action, circle_loop,
        circle_sphere_inclusion, point, z2_sphere_inclusion,
    };

    #[test]
    fn sphere_window_two_is_free_of_rank_nine() {
        let s = build_sphere_rotation(circle_sphere_inclusion()).unwrap();
        let (r, classes) = k_theory(&s, 2).unwrap();
        assert_eq!(r.dims, vec![9, 0]);
        assert!(r.torsion.is_empty());
        assert_eq!(classes.len(), 9);
        // Every generator satisfies the compatibility: the virtual dimension of each
        // pole element equals the total element's coefficient.
        for k in &classes {
            let u = k.total[0].virtual_dim(&GroupDesc::trivial()).unwrap();
            for pole in &k.strata {
                assert_eq!(pole[0].virtual_dim(&GroupDesc::circle()).unwrap(), u);
            }
        }
    }

    #[test]
    fn z2_sphere_window_one_has_rank_ten() {
        let s = build_sphere_rotation(z2_sphere_inclusion()).unwrap();
        let (r, _) = k_theory(&s, 1).unwrap();
        assert_eq!(r.dims, vec![10, 0]);
    }

    #[test]
    fn trivial_point_action_recovers_the_representation_window() {
        let s = build_trivial_action(GroupDesc::circle(), point());
        for w in 1..=3 {
            let (r, _) = k_theory(&s, w).unwrap();
            assert_eq!(r.dims, vec![2 * w + 1, 0]);
        }
        let z2 = build_trivial_action(GroupDesc::Finite(crate::groups::cyclic(2)), point());
        let (r, _) = k_theory(&z2, 4).unwrap();
        assert_eq!(r.dims, vec![2, 0]);
    }

    #[test]
    fn non_contractible_spaces_are_out_of_scope() {
        let s = build_free_action(GroupDesc::Finite(crate::groups::cyclic(2)), circle_loop());
        let err = k_theory(&s, 1).unwrap_err();
        assert!(matches!(err, TheoryError::OutOfScope(_)));
        assert_eq!(err.to_string(), K_SCOPE_MESSAGE);
    }
}

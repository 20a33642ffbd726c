//! The localization map from delocalized to equivariant cohomology (fiberwise Taylor
//! expansion of characters), the equivariant Chern character (coefficient-wise identity
//! embedding of K-classes on the contractible-strata scope), and the commuting-triangle
//! consistency check between them.

use num::Zero;

use crate::cochain::{cohomology_basis, pullback_complex};
use crate::groups::{invariant_poly_basis, localize_char, GroupDesc, IrredLabel, RepRingElem};
use crate::linalg::{QMat, Rat};
use crate::resolution::{rep_system, ResolutionSpace};

use super::assemble::{assemble_complex, ensure_valid, Coefficients};
use super::error::TheoryError;
use super::ktheory::{k_theory, KClass, K_SCOPE_MESSAGE};

/// A delocalized cocycle with its class coordinates.
#[derive(Clone, Debug)]
pub struct DlClass {
    /// Cochain degree (0 for Chern characters of K-classes).
    pub degree: usize,
    /// Ambient coordinates in the [total, stratum 0, ...] representation layout.
    pub ambient: Vec<Rat>,
    /// Coordinates in the cohomology classes of that degree.
    pub class: Vec<Rat>,
}

/// One polynomial-degree component of a localized class: a cocycle of the Borel-`j`
/// compatibility complex in the same cochain degree, of total degree `2j + degree`.
#[derive(Clone, Debug)]
pub struct HgComponent {
    pub j: usize,
    pub degree: usize,
    pub ambient: Vec<Rat>,
    pub class: Vec<Rat>,
}

/// Matrix of the fiberwise localization at polynomial degree `j`: one column per label,
/// the Taylor coefficients of its character in the degree-`j` invariant basis.
fn localization_matrix(
    g: &GroupDesc,
    labels: &[IrredLabel],
    j: usize,
) -> Result<QMat, TheoryError> {
    let dim = invariant_poly_basis(g, j)?.dim();
    let mut cols = Vec::with_capacity(labels.len());
    for l in labels {
        let p = localize_char(g, &RepRingElem::from_label(l.clone()), j)?;
        cols.push(p.components[j].clone());
    }
    Ok(QMat::from_columns(dim, &cols))
}

/// Applies the localization map to a delocalized cocycle given by its ambient
/// coordinates in cochain degree `degree`: verifies it is a compatible closed element,
/// expands every fiber value, and returns one Borel-`j` cocycle per polynomial degree
/// with `2j + degree <= max_degree`.
pub fn localization_map(
    s: &ResolutionSpace,
    window: usize,
    degree: usize,
    ambient: &[Rat],
    max_degree: usize,
) -> Result<Vec<HgComponent>, TheoryError> {
    ensure_valid(s)?;
    let rep = assemble_complex(s, Coefficients::Rep(window))?;
    let rep_pb = pullback_complex(&rep.total, &rep.parts)?;
    if degree >= rep_pb.degrees() {
        return Err(TheoryError::Invalid(format!(
            "cochain degree {degree} exceeds the complex"
        )));
    }
    let offs_rep = rep.ambient_offsets(degree);
    if ambient.len() != *offs_rep.last().unwrap() {
        return Err(TheoryError::Invalid(format!(
            "ambient vector has {} coordinates, the degree-{degree} layout has {}",
            ambient.len(),
            offs_rep.last().unwrap()
        )));
    }
    let coords = rep_pb.express(degree, ambient).ok_or_else(|| {
        TheoryError::NotCocycle("the element violates a compatibility constraint".into())
    })?;
    let closed = rep_pb
        .complex()
        .diff(degree)
        .mul_vec(&coords)
        .iter()
        .all(Zero::is_zero);
    if !closed {
        return Err(TheoryError::NotCocycle("the element is not closed".into()));
    }

    let groups: Vec<&GroupDesc> = s.refs().iter().map(|&r| s.group_of(r)).collect();
    let mut labels: Vec<Vec<IrredLabel>> = Vec::with_capacity(groups.len());
    let mut cell_counts: Vec<usize> = Vec::with_capacity(groups.len());
    for (b, &r) in s.refs().iter().enumerate() {
        labels.push(rep_system(s, r, window)?.1);
        let layout = if b == 0 {
            &rep.total_layout
        } else {
            &rep.base_layouts[b - 1]
        };
        cell_counts.push(layout.cells(degree).len());
    }

    if degree > max_degree {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for j in 0..=(max_degree - degree) / 2 {
        let borel = assemble_complex(s, Coefficients::Borel(j))?;
        let borel_pb = pullback_complex(&borel.total, &borel.parts)?;
        let offs_b = borel.ambient_offsets(degree);
        let mut img = vec![Rat::zero(); *offs_b.last().unwrap()];
        for (b, group) in groups.iter().enumerate() {
            let lmat = localization_matrix(group, &labels[b], j)?;
            let (m_in, m_out) = (labels[b].len(), lmat.nrows());
            for cell in 0..cell_counts[b] {
                let slice = &ambient[offs_rep[b] + cell * m_in..offs_rep[b] + (cell + 1) * m_in];
                let value = lmat.mul_vec(slice);
                img[offs_b[b] + cell * m_out..offs_b[b] + (cell + 1) * m_out]
                    .clone_from_slice(&value);
            }
        }
        let bcoords = borel_pb.express(degree, &img).ok_or_else(|| {
            TheoryError::NotCocycle(
                "the localized element violates a Borel compatibility constraint".into(),
            )
        })?;
        let basis = cohomology_basis(borel_pb.complex());
        let class = basis.class_coords(degree, &bcoords).ok_or_else(|| {
            TheoryError::NotCocycle("the localized element is not closed".into())
        })?;
        out.push(HgComponent {
            j,
            degree,
            ambient: img,
            class,
        });
    }
    Ok(out)
}

/// The equivariant Chern character of a K-class: on the contractible-strata scope the
/// curvature contributes nothing, so the class embeds coefficient-wise as a degree-0
/// delocalized cocycle.
pub fn chern_character(
    s: &ResolutionSpace,
    k: &KClass,
    window: usize,
) -> Result<DlClass, TheoryError> {
    ensure_valid(s)?;
    if !s.contractible_strata {
        return Err(TheoryError::OutOfScope(K_SCOPE_MESSAGE.to_string()));
    }
    let rep = assemble_complex(s, Coefficients::Rep(window))?;
    let rep_pb = pullback_complex(&rep.total, &rep.parts)?;
    let ambient: Vec<Rat> = k.vector.iter().map(|v| Rat::from(v.clone())).collect();
    let expected = *rep.ambient_offsets(0).last().unwrap();
    if ambient.len() != expected {
        return Err(TheoryError::Invalid(format!(
            "K-class vector has {} coordinates, the window-{window} layout has {expected}",
            ambient.len()
        )));
    }
    let coords = rep_pb.express(0, &ambient).ok_or_else(|| {
        TheoryError::NotCocycle("the K-class data violates a compatibility constraint".into())
    })?;
    let basis = cohomology_basis(rep_pb.complex());
    let class = basis
        .class_coords(0, &coords)
        .ok_or_else(|| TheoryError::NotCocycle("the K-class data is not flat".into()))?;
    Ok(DlClass {
        degree: 0,
        ambient,
        class,
    })
}

/// Report of the Chern-triangle consistency check.
#[derive(Clone, Debug)]
pub struct TriangleReport {
    /// Number of K-theory generators checked.
    pub generators: usize,
    /// Even delocalized dimension at the same window, for the rank comparison.
    pub dl_even_dim: usize,
    pub problems: Vec<String>,
}

impl TriangleReport {
    pub fn pass(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Verifies on every K-theory generator that localizing the Chern character gives the
/// same cohomology classes when computed through a different cocycle representative —
/// i.e. the composite K → H_dl → H_G is well defined — and that the Chern character is
/// rationally bijective onto the even delocalized classes (rank comparison).
pub fn chern_triangle_check(
    s: &ResolutionSpace,
    max_degree: usize,
    window: usize,
) -> Result<TriangleReport, TheoryError> {
    let (_, classes) = k_theory(s, window)?;
    let rep = assemble_complex(s, Coefficients::Rep(window))?;
    let rep_pb = pullback_complex(&rep.total, &rep.parts)?;
    let dl_basis = cohomology_basis(rep_pb.complex());
    let h = crate::cochain::cohomology(rep_pb.complex());
    let mut problems = Vec::new();

    let mut class_columns: Vec<Vec<Rat>> = Vec::new();
    for (gi, k) in classes.iter().enumerate() {
        let ch = chern_character(s, k, window)?;
        let direct = localization_map(s, window, 0, &ch.ambient, max_degree)?;

        // The same classes through a different representative of the same dl class.
        let mut alt = vec![Rat::zero(); rep_pb.complex().rank(0)];
        for (i, c) in ch.class.iter().enumerate() {
            for (t, v) in dl_basis.representative(0, i).iter().enumerate() {
                alt[t] += c * v;
            }
        }
        let alt_ambient = rep_pb.realize(0, &alt);
        let via_class = localization_map(s, window, 0, &alt_ambient, max_degree)?;

        for (a, b) in direct.iter().zip(&via_class) {
            if a.class != b.class {
                problems.push(format!(
                    "generator {gi}: localization is not well defined on classes at polynomial degree {}",
                    a.j
                ));
            }
        }
        class_columns.push(ch.class.clone());
    }

    // Zero goes to zero.
    let zero = vec![Rat::zero(); *rep.ambient_offsets(0).last().unwrap()];
    for component in localization_map(s, window, 0, &zero, max_degree)? {
        if component.class.iter().any(|v| !v.is_zero()) {
            problems.push(format!(
                "zero class localizes to a nonzero class at polynomial degree {}",
                component.j
            ));
        }
    }

    // Rational bijectivity of the Chern character onto the even part.
    let chern_rank = QMat::from_columns(h.dims.first().copied().unwrap_or(0), &class_columns).rank();
    if chern_rank != classes.len() || chern_rank != h.even_dim() {
        problems.push(format!(
            "Chern character rank {chern_rank} does not match K rank {} and even delocalized dimension {}",
            classes.len(),
            h.even_dim()
        ));
    }

    Ok(TriangleReport {
        generators: classes.len(),
        dl_even_dim: h.even_dim(),
        problems,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupDesc;
    use crate::linalg::{frac, rat};
    use crate::resolution::{
        build_mobius_example, build_sphere_rotation, build_trivial_action,
        circle_sphere_inclusion, point, z2_sphere_inclusion,
    };

    #[test]
    fn sphere_weight_one_class_localizes_to_the_exponential_series() {
        let s = build_sphere_rotation(circle_sphere_inclusion()).unwrap();
        // u = 1 on both interior vertices; weight-1 label at both poles. Window 2 labels
        // are ordered (-2, -1, 0, 1, 2), so weight 1 sits at offset 3.
        let mut ambient = vec![rat(0); 12];
        ambient[0] = rat(1);
        ambient[1] = rat(1);
        ambient[2 + 3] = rat(1);
        ambient[7 + 3] = rat(1);
        let parts = localization_map(&s, 2, 0, &ambient, 6).unwrap();
        assert_eq!(parts.len(), 4);
        // j-th component at each pole is 1/j! (the total block has no positive-degree
        // coordinates); the glued class is nonzero in every even degree.
        for (j, p) in parts.iter().enumerate() {
            let expect = (1..=j).fold(rat(1), |acc, i| acc / rat(i as i64));
            if j == 0 {
                assert_eq!(p.ambient, vec![rat(1), rat(1), rat(1), rat(1)]);
            } else {
                assert_eq!(p.ambient, vec![expect.clone(), expect.clone()]);
            }
            assert!(!p.class.is_empty());
        }
    }

    #[test]
    fn incompatible_classes_are_rejected() {
        let s = build_sphere_rotation(circle_sphere_inclusion()).unwrap();
        // Virtual dimension 0 at the north pole but 1 in the interior: violates the
        // face constraint, so this is not a delocalized cochain at all.
        let mut ambient = vec![rat(0); 12];
        ambient[0] = rat(1);
        ambient[1] = rat(1);
        ambient[2 + 3] = rat(1);
        ambient[2 + 1] = rat(-1);
        ambient[7 + 3] = rat(1);
        let err = localization_map(&s, 2, 0, &ambient, 4).unwrap_err();
        assert!(matches!(err, TheoryError::NotCocycle(_)));
    }

    #[test]
    fn mobius_symmetric_class_localizes_to_even_degrees() {
        let s = build_mobius_example();
        // z + z^{-1} at the single vertex; window-1 labels are (-1, 0, 1).
        let ambient = vec![rat(1), rat(0), rat(1)];
        let parts = localization_map(&s, 1, 0, &ambient, 5).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0].ambient, vec![rat(2)]);
        assert_eq!(parts[0].class, vec![rat(2)]);
        // Odd Taylor terms are anti-invariant and die; x^2 survives with coefficient 1.
        assert_eq!(parts[1].ambient, vec![rat(0)]);
        assert!(parts[1].class.is_empty());
        assert_eq!(parts[2].ambient, vec![frac(1, 1)]);
        assert_eq!(parts[2].class, vec![rat(1)]);
    }

    #[test]
    fn non_closed_mobius_class_is_rejected() {
        let s = build_mobius_example();
        // The pure weight-1 class is moved by the monodromy: not closed.
        let ambient = vec![rat(0), rat(0), rat(1)];
        let err = localization_map(&s, 1, 0, &ambient, 2).unwrap_err();
        assert!(matches!(err, TheoryError::NotCocycle(_)));
    }

    #[test]
    fn chern_character_is_the_identity_on_coefficients() {
        let s = build_sphere_rotation(circle_sphere_inclusion()).unwrap();
        let (_, classes) = k_theory(&s, 2).unwrap();
        for k in &classes {
            let ch = chern_character(&s, k, 2).unwrap();
            let expect: Vec<Rat> = k.vector.iter().map(|v| Rat::from(v.clone())).collect();
            assert_eq!(ch.ambient, expect);
        }
        // The zero class maps to the zero class.
        let zero = KClass {
            vector: vec![crate::linalg::Int::from(0); 12],
            total: vec![],
            strata: vec![],
        };
        let ch = chern_character(&s, &zero, 2).unwrap();
        assert!(ch.class.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn triangle_passes_on_the_standard_examples() {
        let sphere = build_sphere_rotation(circle_sphere_inclusion()).unwrap();
        for w in 1..=3 {
            let report = chern_triangle_check(&sphere, 6, w).unwrap();
            assert!(report.pass(), "problems: {:?}", report.problems);
            assert_eq!(report.generators, 4 * w + 1);
        }
        let z2 = build_sphere_rotation(z2_sphere_inclusion()).unwrap();
        let report = chern_triangle_check(&z2, 4, 1).unwrap();
        assert!(report.pass(), "problems: {:?}", report.problems);

        let pt = build_trivial_action(GroupDesc::circle(), point());
        let report = chern_triangle_check(&pt, 6, 2).unwrap();
        assert!(report.pass(), "problems: {:?}", report.problems);
        assert_eq!(report.generators, 5);
    }
}

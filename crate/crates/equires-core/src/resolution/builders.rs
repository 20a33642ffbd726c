//! Builders for the standard resolved actions: the sphere rotation with its two polar
//! strata, trivial actions, free actions, and the flat-but-nontrivial circle example.

use crate::groups::{GroupDesc, InclusionData, SubgroupInclusion};
use crate::linalg::{rat, QMat};

use super::complex::{circle_loop, interval, point, CellComplex, CellMap};
use super::error::ResolutionError;
use super::space::{ResolutionSpace, Stratum};
use super::system::Monodromy;

fn is_acyclic(total: &CellComplex) -> bool {
    let labels = total.components();
    let count = labels.iter().copied().max().map(|m| m + 1).unwrap_or(0);
    (0..count).all(|comp| {
        let cells: Vec<usize> = (0..total.len()).filter(|&c| labels[c] == comp).collect();
        let (sub, _) = total.subcomplex(&cells).expect("components are closed");
        let sys = super::system::LocalSystem::trivial(&sub, 1);
        match crate::cochain::cochain_complex(&sub, &sys) {
            Ok((x, _)) => {
                let h = crate::cochain::cohomology(&x);
                h.dims[0] == 1 && h.dims.iter().skip(1).all(|&d| d == 0)
            }
            Err(_) => false,
        }
    })
}

/// The axis-rotation model: the quotient of the sphere is an interval whose endpoints
/// carry the full isotropy group and whose interior carries the principal isotropy.
/// The inclusion must present principal ⊆ full with circle quotient: either the
/// trivial subgroup of S¹, or the finite factor of S¹ × F.
pub fn build_sphere_rotation(
    inclusion: SubgroupInclusion,
) -> Result<ResolutionSpace, ResolutionError> {
    let supported = match (inclusion.big(), inclusion.data()) {
        (GroupDesc::Torus(1), InclusionData::Trivial) => true,
        (GroupDesc::Product(gs), InclusionData::Factor { index, inner }) => {
            gs.len() == 2
                && *index == 1
                && matches!(gs[0], GroupDesc::Torus(1))
                && matches!(gs[1], GroupDesc::Finite(_))
                && matches!(**inner, InclusionData::Identity)
        }
        _ => false,
    };
    if !supported {
        return Err(ResolutionError::Unsupported(
            "sphere rotation needs principal ⊆ full with circle quotient: \
             trivial ⊂ S¹ or the finite factor of S¹ × F"
                .into(),
        ));
    }
    let full_group = inclusion.big().clone();
    let principal_group = inclusion.small().clone();
    let pole = |name: &str, face_vertex: usize| Stratum {
        name: name.to_string(),
        class_name: "[G]".to_string(),
        base: point(),
        group: full_group.clone(),
        monodromy: Monodromy::trivial(),
        face: vec![face_vertex],
        fibration: CellMap::collapse_to(1, 0),
        inclusion: inclusion.clone(),
    };
    Ok(ResolutionSpace {
        name: format!("sphere-rotation[{}]", full_group.display_name()),
        total: interval(),
        principal_group,
        principal_monodromy: Monodromy::trivial(),
        strata: vec![pole("north", 0), pole("south", 1)],
        triangles: Vec::new(),
        contractible_strata: true,
    })
}

/// A trivially acted-on space: one stratum carrying the whole group, no boundary faces.
pub fn build_trivial_action(g: GroupDesc, x: CellComplex) -> ResolutionSpace {
    let contractible = is_acyclic(&x);
    ResolutionSpace {
        name: format!("trivial-action[{}]", g.display_name()),
        total: x,
        principal_group: g,
        principal_monodromy: Monodromy::trivial(),
        strata: Vec::new(),
        triangles: Vec::new(),
        contractible_strata: contractible,
    }
}

/// A freely acted-on space, seen from its quotient: principal isotropy is trivial and
/// there are no boundary strata.
pub fn build_free_action(g: GroupDesc, z: CellComplex) -> ResolutionSpace {
    let contractible = is_acyclic(&z);
    ResolutionSpace {
        name: format!("free-action[{}]", g.display_name()),
        total: z,
        principal_group: GroupDesc::trivial(),
        principal_monodromy: Monodromy::trivial(),
        strata: Vec::new(),
        triangles: Vec::new(),
        contractible_strata: contractible,
    }
}

/// Unique isotropy S¹ inside S¹ ⋊ ℤ₂ over a circle: the reflection acts as monodromy,
/// negating the Lie coordinate and the weights, so the degree-1 Borel system is the
/// flat line bundle with holonomy −1.
pub fn build_mobius_example() -> ResolutionSpace {
    let mut monodromy = Monodromy::trivial();
    monodromy.set(
        1,
        1,
        crate::groups::GroupAction {
            on_labels: crate::groups::LabelAction::WeightLinear(vec![vec![-1]]),
            on_lie: QMat::from_dense(vec![vec![rat(-1)]]),
        },
    );
    ResolutionSpace {
        name: "mobius-circle".to_string(),
        total: circle_loop(),
        principal_group: GroupDesc::circle(),
        principal_monodromy: monodromy,
        strata: Vec::new(),
        triangles: Vec::new(),
        contractible_strata: false,
    }
}

/// The two standard sphere inclusions: trivial ⊂ S¹.
pub fn circle_sphere_inclusion() -> SubgroupInclusion {
    SubgroupInclusion::new(
        GroupDesc::circle(),
        GroupDesc::trivial(),
        InclusionData::Trivial,
    )
    .expect("trivial subgroup inclusion is valid")
}

/// ... and ℤ₂ as the finite factor of S¹ × ℤ₂.
pub fn z2_sphere_inclusion() -> SubgroupInclusion {
    let z2 = GroupDesc::Finite(crate::groups::cyclic(2));
    SubgroupInclusion::new(
        GroupDesc::Product(vec![GroupDesc::circle(), z2.clone()]),
        z2,
        InclusionData::Factor {
            index: 1,
            inner: Box::new(InclusionData::Identity),
        },
    )
    .expect("factor inclusion is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::space::{
        borel_system, rep_system, validate_resolution, StratumRef,
    };
    use crate::resolution::{simplicial, torus_cw};

    #[test]
    fn sphere_models_validate() {
        for inc in [circle_sphere_inclusion(), z2_sphere_inclusion()] {
            let space = build_sphere_rotation(inc).unwrap();
            let report = validate_resolution(&space);
            assert!(report.is_valid(), "problems: {:?}", report.problems);
            assert_eq!(space.strata.len(), 2);
        }
        // A non-circle quotient is rejected.
        let bad = SubgroupInclusion::new(
            GroupDesc::Torus(2),
            GroupDesc::trivial(),
            InclusionData::Trivial,
        )
        .unwrap();
        assert!(build_sphere_rotation(bad).is_err());
    }

    #[test]
    fn sphere_fiber_dimensions() {
        let space = build_sphere_rotation(circle_sphere_inclusion()).unwrap();
        // Open stratum: trivial isotropy kills positive Borel degrees.
        let (open_j1, _) = borel_system(&space, StratumRef::Principal, 1).unwrap();
        assert_eq!(open_j1.dim(), 0);
        let (open_rep, _) = rep_system(&space, StratumRef::Principal, 2).unwrap();
        assert_eq!(open_rep.dim(), 1);
        // Pole stratum: S¹ invariants are spanned by x^j; window-1 labels are 3.
        let (pole_j2, basis) = borel_system(&space, StratumRef::Stratum(0), 2).unwrap();
        assert_eq!(pole_j2.dim(), 1);
        assert_eq!(basis.dim(), 1);
        let (pole_rep, labels) = rep_system(&space, StratumRef::Stratum(0), 1).unwrap();
        assert_eq!(pole_rep.dim(), 3);
        assert_eq!(labels.len(), 3);
    }

    #[test]
    fn trivial_and_free_actions_validate() {
        let s3 = GroupDesc::Finite(crate::groups::symmetric(3));
        for space in [
            build_trivial_action(GroupDesc::Finite(crate::groups::cyclic(2)), point()),
            build_trivial_action(GroupDesc::circle(), circle_loop()),
            build_trivial_action(s3, torus_cw()),
            build_free_action(GroupDesc::Finite(crate::groups::cyclic(2)), point()),
            build_free_action(GroupDesc::Finite(crate::groups::cyclic(2)), circle_loop()),
            build_free_action(
                GroupDesc::circle(),
                simplicial(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
                    .unwrap(),
            ),
        ] {
            let report = validate_resolution(&space);
            assert!(report.is_valid(), "{}: {:?}", space.name, report.problems);
        }
        // Contractibility flags follow acyclicity.
        assert!(build_trivial_action(GroupDesc::circle(), point()).contractible_strata);
        assert!(!build_free_action(GroupDesc::circle(), circle_loop()).contractible_strata);
    }

    #[test]
    fn free_action_borel_ranks() {
        let space = build_free_action(GroupDesc::Finite(crate::groups::cyclic(2)), interval());
        let mut total = 0;
        for j in 0..4 {
            let (sys, _) = borel_system(&space, StratumRef::Principal, j).unwrap();
            total += sys.dim();
        }
        assert_eq!(total, 1);
    }

    #[test]
    fn mobius_transports() {
        let space = build_mobius_example();
        let report = validate_resolution(&space);
        assert!(report.is_valid(), "problems: {:?}", report.problems);
        let (b1, _) = borel_system(&space, StratumRef::Principal, 1).unwrap();
        assert_eq!(b1.transport(1, 1).to_dense(), vec![vec![rat(-1)]]);
        let (b0, _) = borel_system(&space, StratumRef::Principal, 0).unwrap();
        assert_eq!(b0.transport(1, 1).to_dense(), vec![vec![rat(1)]]);
        let (rep, labels) = rep_system(&space, StratumRef::Principal, 1).unwrap();
        assert_eq!(labels.len(), 3);
        // The reflection swaps the ±1 weights and fixes weight 0.
        let t = rep.transport(1, 1).to_dense();
        assert_eq!(t[0][2], rat(1));
        assert_eq!(t[1][1], rat(1));
        assert_eq!(t[2][0], rat(1));
    }
}

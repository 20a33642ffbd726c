//! Shipped example and corruption fixtures: the valid files round-trip
//! byte-identically, and each deliberately corrupted file parses but is caught by the
//! validator with a message naming the offending cell.

use std::collections::BTreeMap;
use std::path::PathBuf;

use equires::{parse_space, serialize_space};
use equires_core::groups::{cyclic, GroupDesc, InclusionData, SubgroupInclusion};
use equires_core::resolution::{
    build_mobius_example, build_sphere_rotation, build_trivial_action, circle_sphere_inclusion,
    interval, point, validate_resolution, Cell, CellComplex, CellMap, Monodromy,
    ResolutionSpace, Stratum, Triangle,
};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("fixtures")
}

fn two_points() -> CellComplex {
    CellComplex::new(vec![
        Cell { dim: 0, boundary: vec![] },
        Cell { dim: 0, boundary: vec![] },
    ])
    .unwrap()
}

/// A 2-cell glued onto an edge with a single incidence: its boundary square is the sum
/// of the edge's endpoints, so ∂² ≠ 0 at cell 3.
fn corrupt_dsq_space() -> ResolutionSpace {
    let total = CellComplex::new(vec![
        Cell { dim: 0, boundary: vec![] },
        Cell { dim: 0, boundary: vec![] },
        Cell { dim: 1, boundary: vec![(0, 1), (1, 1)] },
        Cell { dim: 2, boundary: vec![(2, 1)] },
    ])
    .unwrap();
    ResolutionSpace {
        name: "corrupt-dsq".into(),
        total,
        principal_group: GroupDesc::trivial(),
        principal_monodromy: Monodromy::trivial(),
        strata: vec![],
        triangles: vec![],
        contractible_strata: false,
    }
}

fn pole(name: &str, face_cell: usize) -> Stratum {
    Stratum {
        name: name.into(),
        class_name: "[S1]".into(),
        base: point(),
        group: GroupDesc::circle(),
        monodromy: Monodromy::trivial(),
        face: vec![face_cell],
        fibration: CellMap { image: vec![0] },
        inclusion: SubgroupInclusion::new(
            GroupDesc::circle(),
            GroupDesc::trivial(),
            InclusionData::Trivial,
        )
        .unwrap(),
    }
}

/// Two zero-dimensional strata sharing the face cell 0: intersections of equal base
/// dimension are forbidden.
fn corrupt_equal_dims_space() -> ResolutionSpace {
    ResolutionSpace {
        name: "corrupt-equal-dims".into(),
        total: interval(),
        principal_group: GroupDesc::trivial(),
        principal_monodromy: Monodromy::trivial(),
        strata: vec![pole("north", 0), pole("faux", 0)],
        triangles: vec![],
        contractible_strata: true,
    }
}

/// A deep point-pair stratum under a shallow interval stratum, with the triangle map
/// swapping the two points: the fibrations cannot commute through it.
fn corrupt_triangle_space() -> ResolutionSpace {
    let deep = Stratum {
        name: "deep".into(),
        class_name: "[S1]".into(),
        base: two_points(),
        group: GroupDesc::circle(),
        monodromy: Monodromy::trivial(),
        face: vec![0, 1],
        fibration: CellMap { image: vec![0, 1] },
        inclusion: SubgroupInclusion::new(
            GroupDesc::circle(),
            GroupDesc::trivial(),
            InclusionData::Trivial,
        )
        .unwrap(),
    };
    let shallow = Stratum {
        name: "shallow".into(),
        class_name: "[Z2]".into(),
        base: interval(),
        group: GroupDesc::Finite(cyclic(2)),
        monodromy: Monodromy::trivial(),
        face: vec![0, 1, 2],
        fibration: CellMap { image: vec![0, 1, 2] },
        inclusion: SubgroupInclusion::new(
            GroupDesc::Finite(cyclic(2)),
            GroupDesc::trivial(),
            InclusionData::Trivial,
        )
        .unwrap(),
    };
    ResolutionSpace {
        name: "corrupt-triangle".into(),
        total: interval(),
        principal_group: GroupDesc::trivial(),
        principal_monodromy: Monodromy::trivial(),
        strata: vec![deep, shallow],
        triangles: vec![Triangle {
            deeper: 0,
            shallower: 1,
            map: BTreeMap::from([(0, 1), (1, 0)]),
        }],
        contractible_strata: true,
    }
}

fn all_fixtures() -> Vec<(&'static str, ResolutionSpace)> {
    vec![
        (
            "appendix_sphere.json",
            build_sphere_rotation(circle_sphere_inclusion()).unwrap(),
        ),
        ("mobius.json", build_mobius_example()),
        (
            "trivial_point_s1.json",
            build_trivial_action(GroupDesc::circle(), point()),
        ),
        ("corrupt_dsq.json", corrupt_dsq_space()),
        ("corrupt_equal_dims.json", corrupt_equal_dims_space()),
        ("corrupt_triangle.json", corrupt_triangle_space()),
    ]
}

/// Rewrites every fixture in canonical serialized form. Run manually after changing
/// the schema: `cargo test -p equires --test fixtures -- --ignored regenerate`.
#[test]
#[ignore]
fn regenerate() {
    let dir = fixtures_dir();
    std::fs::create_dir_all(&dir).unwrap();
    for (file, space) in all_fixtures() {
        std::fs::write(dir.join(file), serialize_space(&space).unwrap()).unwrap();
    }
}

#[test]
fn shipped_files_match_their_builders_and_round_trip_byte_identically() {
    for (file, space) in all_fixtures() {
        let path = fixtures_dir().join(file);
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e} (run the regenerate test?)", path.display()));
        assert_eq!(text, serialize_space(&space).unwrap(), "{file} is stale");
        let parsed = parse_space(&text).unwrap();
        assert_eq!(serialize_space(&parsed).unwrap(), text, "{file}");
    }
}

#[test]
fn corruption_fixtures_are_exhaustive_and_name_the_cells() {
    let dir = fixtures_dir();
    let mut corrupt: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.starts_with("corrupt_") && n.ends_with(".json"))
        .collect();
    corrupt.sort();
    assert_eq!(
        corrupt,
        vec![
            "corrupt_dsq.json".to_string(),
            "corrupt_equal_dims.json".to_string(),
            "corrupt_triangle.json".to_string(),
        ]
    );

    let expectations = [
        ("corrupt_dsq.json", "∂² ≠ 0 at cell 3 over face 0"),
        (
            "corrupt_equal_dims.json",
            "intersect at cell 0 but both have base dimension 0",
        ),
        (
            "corrupt_triangle.json",
            "does not commute at total cell 0: 1 ≠ 0",
        ),
    ];
    for (file, needle) in expectations {
        let text = std::fs::read_to_string(dir.join(file)).unwrap();
        let space = parse_space(&text).unwrap_or_else(|e| panic!("{file} must parse: {e}"));
        let report = validate_resolution(&space);
        assert!(
            !report.is_valid(),
            "{file} unexpectedly passed validation"
        );
        assert!(
            report.problems.iter().any(|p| p.contains(needle)),
            "{file}: expected a problem containing '{needle}', got {:?}",
            report.problems
        );
    }
}

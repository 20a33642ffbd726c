//! Acceptance suite: one test per criterion, each printing a single
//! `ACCEPTANCE n (name): PASS/FAIL` line. Randomized criteria honor the
//! `EQUIRES_SEED` environment variable.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num::Zero;
use rand_chacha::ChaCha8Rng;
use rand::{Rng, SeedableRng};

use equires_core::cochain::{les_check, les_suite};
use equires_core::groups::{cyclic, symmetric, GroupDesc, InclusionData, InvPoly, SubgroupInclusion};
use equires_core::linalg::{Int, Rat};
use equires_core::resolution::{
    build_free_action, build_mobius_example, build_sphere_rotation, build_trivial_action,
    circle_sphere_inclusion, point, simplicial, subdivide_space, validate_resolution,
    z2_sphere_inclusion, Cell, CellComplex, CellMap, Monodromy, ResolutionSpace, Stratum,
};
use equires_core::theories::{
    ab_pushforward, assemble_complex, chern_triangle_check, delocalized_cohomology,
    equivariant_cohomology, k_theory, Coefficients, TheoryError,
};

fn criterion(n: usize, name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("ACCEPTANCE {n} ({name}): PASS"),
        Err(e) => {
            println!("ACCEPTANCE {n} ({name}): FAIL — {e}");
            panic!("acceptance criterion {n} ({name}) failed: {e}");
        }
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let elapsed = start.elapsed();
    ensure(
        elapsed <= budget,
        format!("{what} took {elapsed:?}, budget {budget:?}"),
    )
}

fn seed() -> u64 {
    std::env::var("EQUIRES_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0xE9E9)
}

// ---------------------------------------------------------------------------
// Independent Betti-number oracle: dense Gaussian elimination over ℚ on the
// simplicial boundary matrices, sharing nothing with the library's sparse kernel.
// ---------------------------------------------------------------------------

fn dense_rank(mut m: Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        let pivot = pivot_row[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let factor = &row[c] / &pivot;
            for k in c..cols {
                let sub = &pivot_row[k] * &factor;
                row[k] -= sub;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn betti_numbers(x: &CellComplex) -> Vec<usize> {
    let top = x.dim();
    let mut ranks = Vec::with_capacity(top + 1);
    for q in 1..=top {
        let rows = x.cells_of_dim(q);
        let cols = x.cells_of_dim(q - 1);
        let mut m = vec![vec![Rat::zero(); cols.len()]; rows.len()];
        for (r, &cell) in rows.iter().enumerate() {
            for &(face, inc) in &x.cell(cell).boundary {
                let col = cols.iter().position(|&f| f == face).unwrap();
                m[r][col] += Rat::from(Int::from(inc));
            }
        }
        ranks.push(dense_rank(m));
    }
    (0..=top)
        .map(|q| {
            let cells = x.cells_of_dim(q).len();
            let d_in = if q == 0 { 0 } else { ranks[q - 1] };
            let d_out = if q == top { 0 } else { ranks[q] };
            cells - d_in - d_out
        })
        .collect()
}

fn random_complex(rng: &mut ChaCha8Rng) -> CellComplex {
    loop {
        let nv = rng.gen_range(3..=6usize);
        let nf = rng.gen_range(1..=4usize);
        let mut facets = Vec::new();
        for _ in 0..nf {
            let size = rng.gen_range(1..=3usize.min(nv));
            let mut verts: Vec<usize> = (0..nv).collect();
            for i in 0..size {
                let j = rng.gen_range(i..nv);
                verts.swap(i, j);
            }
            let mut f = verts[..size].to_vec();
            f.sort_unstable();
            facets.push(f);
        }
        facets.sort();
        facets.dedup();
        if let Ok(c) = simplicial(&facets) {
            return c;
        }
    }
}

fn suite_complexes() -> Vec<CellComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    (0..10).map(|_| random_complex(&mut rng)).collect()
}

fn suite_groups() -> Vec<GroupDesc> {
    vec![
        GroupDesc::Finite(cyclic(2)),
        GroupDesc::Finite(symmetric(3)),
        GroupDesc::circle(),
    ]
}

/// Degree-j dimension of the invariant polynomial ring for the suite groups: 1 in
/// every degree for the circle, concentrated in degree 0 for finite groups.
fn invariant_dim(g: &GroupDesc, j: usize) -> usize {
    match g {
        GroupDesc::Torus(1) => 1,
        _ => usize::from(j == 0),
    }
}

fn convolution(betti: &[usize], g: &GroupDesc, max_degree: usize) -> Vec<usize> {
    (0..=max_degree)
        .map(|q| {
            (0..=q / 2)
                .map(|j| betti.get(q - 2 * j).copied().unwrap_or(0) * invariant_dim(g, j))
                .sum()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Criteria.
// ---------------------------------------------------------------------------

#[test]
fn a1_appendix_reproduction() {
    criterion(1, "appendix reproduction", || {
        let start = Instant::now();
        let s = build_sphere_rotation(circle_sphere_inclusion()).map_err(|e| e.to_string())?;
        let hg = equivariant_cohomology(&s, 6).map_err(|e| e.to_string())?;
        ensure(
            hg.dims == vec![1, 0, 2, 0, 2, 0, 2],
            format!("H_G dims {:?}", hg.dims),
        )?;
        let hdl = delocalized_cohomology(&s, 2).map_err(|e| e.to_string())?;
        ensure(hdl.dims[1] == 0, format!("H_dl odd {}", hdl.dims[1]))?;
        let (k, _) = k_theory(&s, 2).map_err(|e| e.to_string())?;
        ensure(k.dims[0] == 9, format!("K^0 rank {}", k.dims[0]))?;
        ensure(k.torsion.is_empty(), format!("K^0 torsion {:?}", k.torsion))?;
        let triangle = chern_triangle_check(&s, 6, 2).map_err(|e| e.to_string())?;
        ensure(
            triangle.pass(),
            format!("triangle problems {:?}", triangle.problems),
        )?;
        within(start, Duration::from_secs(1), "criterion 1")
    });
}

#[test]
fn a2_trivial_action_convolution() {
    criterion(2, "trivial-action convolution", || {
        let start = Instant::now();
        for (i, x) in suite_complexes().iter().enumerate() {
            let betti = betti_numbers(x);
            for g in suite_groups() {
                let expected = convolution(&betti, &g, 4);
                let s = build_trivial_action(g.clone(), x.clone());
                let hg = equivariant_cohomology(&s, 4).map_err(|e| e.to_string())?;
                ensure(
                    hg.dims == expected,
                    format!(
                        "complex {i} under {}: got {:?}, convolution {:?}",
                        g.display_name(),
                        hg.dims,
                        expected
                    ),
                )?;
            }
        }
        within(start, Duration::from_secs(5), "criterion 2")
    });
}

#[test]
fn a3_free_action_betti() {
    criterion(3, "free-action Betti", || {
        let start = Instant::now();
        for (i, z) in suite_complexes().iter().enumerate() {
            let mut expected = betti_numbers(z);
            expected.resize(5, 0);
            for g in suite_groups() {
                let s = build_free_action(g.clone(), z.clone());
                let hg = equivariant_cohomology(&s, 4).map_err(|e| e.to_string())?;
                ensure(
                    hg.dims == expected,
                    format!(
                        "complex {i} under {}: got {:?}, Betti {:?}",
                        g.display_name(),
                        hg.dims,
                        expected
                    ),
                )?;
            }
        }
        within(start, Duration::from_secs(5), "criterion 3")
    });
}

#[test]
fn a4_mobius_example() {
    criterion(4, "Möbius example", || {
        let start = Instant::now();
        let s = build_mobius_example();
        let hg = equivariant_cohomology(&s, 5).map_err(|e| e.to_string())?;
        ensure(
            hg.dims == vec![1, 1, 0, 0, 1, 1],
            format!("H_G dims {:?}", hg.dims),
        )?;
        let hdl = delocalized_cohomology(&s, 2).map_err(|e| e.to_string())?;
        ensure(
            hdl.dims == vec![3, 3],
            format!("H_dl dims {:?}", hdl.dims),
        )?;
        within(start, Duration::from_secs(1), "criterion 4")
    });
}

#[test]
fn a5_rank_identity() {
    criterion(5, "K/H_dl rank identity", || {
        let spaces = vec![
            build_sphere_rotation(circle_sphere_inclusion()).map_err(|e| e.to_string())?,
            build_sphere_rotation(z2_sphere_inclusion()).map_err(|e| e.to_string())?,
            build_trivial_action(GroupDesc::circle(), point()),
        ];
        for s in &spaces {
            for w in 1..=3 {
                let (k, _) = k_theory(s, w).map_err(|e| e.to_string())?;
                let hdl = delocalized_cohomology(s, w).map_err(|e| e.to_string())?;
                ensure(
                    k.dims[0] == hdl.dims[0],
                    format!(
                        "{} at W={w}: K rank {} vs even H_dl {}",
                        s.name, k.dims[0], hdl.dims[0]
                    ),
                )?;
            }
        }
        Ok(())
    })
}

fn fuzz_two_strata_space(rng: &mut ChaCha8Rng, index: usize) -> ResolutionSpace {
    let edges = rng.gen_range(1..=3usize);
    let vertices = edges + 1;
    let mut cells: Vec<Cell> = (0..vertices)
        .map(|_| Cell { dim: 0, boundary: vec![] })
        .collect();
    for e in 0..edges {
        cells.push(Cell {
            dim: 1,
            boundary: vec![(e + 1, 1), (e, -1)],
        });
    }
    let total = CellComplex::new(cells).unwrap();
    let group_pool = [
        GroupDesc::circle(),
        GroupDesc::Finite(cyclic(2)),
        GroupDesc::Finite(cyclic(3)),
    ];
    let mut stratum = |name: &str, vertex: usize| {
        let group = group_pool[rng.gen_range(0..group_pool.len())].clone();
        Stratum {
            name: name.to_string(),
            class_name: format!("[{}]", group.display_name()),
            base: point(),
            group: group.clone(),
            monodromy: Monodromy::trivial(),
            face: vec![vertex],
            fibration: CellMap { image: vec![0] },
            inclusion: SubgroupInclusion::new(group, GroupDesc::trivial(), InclusionData::Trivial)
                .unwrap(),
        }
    };
    let strata = vec![stratum("left", 0), stratum("right", vertices - 1)];
    ResolutionSpace {
        name: format!("fuzz-two-strata-{index}"),
        total,
        principal_group: GroupDesc::trivial(),
        principal_monodromy: Monodromy::trivial(),
        strata,
        triangles: vec![],
        contractible_strata: true,
    }
}

#[test]
fn a6_long_exact_sequences() {
    criterion(6, "long exact sequences", || {
        let mut spaces = vec![
            build_sphere_rotation(circle_sphere_inclusion()).map_err(|e| e.to_string())?,
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 0xA6);
        for i in 0..5 {
            spaces.push(fuzz_two_strata_space(&mut rng, i));
        }
        // The two strata never contain one another, so every subset of them is
        // upward-closed in the isotropy order.
        let subsets: [&[usize]; 4] = [&[], &[0], &[1], &[0, 1]];
        for s in &spaces {
            let report = validate_resolution(s);
            ensure(
                report.is_valid(),
                format!("{} invalid: {:?}", s.name, report.problems),
            )?;
            for coeff in [Coefficients::Rep(1), Coefficients::Borel(0), Coefficients::Borel(1)] {
                let a = assemble_complex(s, coeff).map_err(|e| e.to_string())?;
                for subset in subsets {
                    let zeroed: BTreeSet<usize> = subset.iter().copied().collect();
                    let (sub, full, quotient, maps) =
                        les_suite(&a.total, &a.parts, &zeroed, &a.order)
                            .map_err(|e| e.to_string())?;
                    let report = les_check(&sub, &full, &quotient, &maps)
                        .map_err(|e| e.to_string())?;
                    ensure(
                        report.is_exact(),
                        format!(
                            "{} with {coeff:?}, zeroed {subset:?}: {:?}",
                            s.name, report.problems
                        ),
                    )?;
                }
            }
        }
        Ok(())
    })
}

#[test]
fn a7_subdivision_invariance() {
    criterion(7, "subdivision invariance", || {
        // Criterion 1 dims.
        let sphere = build_sphere_rotation(circle_sphere_inclusion()).map_err(|e| e.to_string())?;
        let sub = subdivide_space(&sphere).map_err(|e| e.to_string())?;
        ensure(
            equivariant_cohomology(&sub, 6).map_err(|e| e.to_string())?.dims
                == vec![1, 0, 2, 0, 2, 0, 2],
            "sphere H_G changed under subdivision",
        )?;
        ensure(
            delocalized_cohomology(&sub, 2).map_err(|e| e.to_string())?.dims == vec![9, 0],
            "sphere H_dl changed under subdivision",
        )?;
        let (k, _) = k_theory(&sub, 2).map_err(|e| e.to_string())?;
        ensure(k.dims[0] == 9, "sphere K rank changed under subdivision")?;
        let triangle = chern_triangle_check(&sub, 6, 2).map_err(|e| e.to_string())?;
        ensure(triangle.pass(), "sphere triangle fails after subdivision")?;

        // Criterion 4 dims.
        let mobius = build_mobius_example();
        let sub = subdivide_space(&mobius).map_err(|e| e.to_string())?;
        ensure(
            equivariant_cohomology(&sub, 5).map_err(|e| e.to_string())?.dims
                == vec![1, 1, 0, 0, 1, 1],
            "Möbius H_G changed under subdivision",
        )?;
        ensure(
            delocalized_cohomology(&sub, 2).map_err(|e| e.to_string())?.dims == vec![3, 3],
            "Möbius H_dl changed under subdivision",
        )?;

        // Criteria 2 and 3 dims over the full randomized suite.
        for (i, x) in suite_complexes().iter().enumerate() {
            for g in suite_groups() {
                for build in [true, false] {
                    let s = if build {
                        build_trivial_action(g.clone(), x.clone())
                    } else {
                        build_free_action(g.clone(), x.clone())
                    };
                    let before = equivariant_cohomology(&s, 4).map_err(|e| e.to_string())?;
                    let sub = subdivide_space(&s).map_err(|e| e.to_string())?;
                    let after = equivariant_cohomology(&sub, 4).map_err(|e| e.to_string())?;
                    ensure(
                        before.dims == after.dims,
                        format!(
                            "complex {i} under {} ({}): {:?} became {:?}",
                            g.display_name(),
                            if build { "trivial" } else { "free" },
                            before.dims,
                            after.dims
                        ),
                    )?;
                }
            }
        }
        Ok(())
    })
}

#[test]
fn a8_pushforward_cases() {
    criterion(8, "push-forward cases", || {
        let g = GroupDesc::circle();
        let poly = |coeffs: &[(usize, Rat)], max: usize| {
            let mut p = InvPoly::zero(&g, max).unwrap();
            for (j, c) in coeffs {
                p.components[*j][0] = c.clone();
            }
            p
        };
        let one = Rat::from(Int::from(1));

        // Constant classes with opposite unit weights cancel exactly.
        let out = ab_pushforward(
            &[
                (poly(&[(0, one.clone())], 4), Int::from(1)),
                (poly(&[(0, one.clone())], 4), Int::from(-1)),
            ],
            4,
        )
        .map_err(|e| e.to_string())?;
        ensure(out.is_zero(), "push of (1, 1) is not zero")?;

        // f_N - f_S = c·x with weights (w, -w) integrates to c/w.
        let c = Rat::new(Int::from(5), Int::from(2));
        let w = 3i64;
        let f_n = poly(&[(0, Rat::from(Int::from(7))), (1, c.clone())], 4);
        let f_s = poly(&[(0, Rat::from(Int::from(7)))], 4);
        let out = ab_pushforward(&[(f_n, Int::from(w)), (f_s, Int::from(-w))], 4)
            .map_err(|e| e.to_string())?;
        let expected = &c / Rat::from(Int::from(w));
        ensure(
            out.component(0) == [expected.clone()],
            format!("degree-0 push {:?}, expected {expected}", out.component(0)),
        )?;
        ensure(
            (1..=4).all(|j| out.component(j).iter().all(|v| v.is_zero())),
            "higher components should vanish",
        )?;

        // The canonical generator case.
        let out = ab_pushforward(
            &[
                (poly(&[(1, one.clone())], 2), Int::from(1)),
                (poly(&[], 2), Int::from(-1)),
            ],
            2,
        )
        .map_err(|e| e.to_string())?;
        ensure(out.component(0) == [one.clone()], "push of (x, 0) is not 1")?;

        // Incompatible constants leave a pole.
        let err = ab_pushforward(
            &[
                (poly(&[(0, one.clone())], 2), Int::from(1)),
                (poly(&[], 2), Int::from(-1)),
            ],
            2,
        )
        .unwrap_err();
        ensure(
            matches!(err, TheoryError::Obstruction(_)),
            format!("expected the obstruction error, got: {err}"),
        )?;
        ensure(
            err.to_string().starts_with("localization obstruction"),
            format!("obstruction message: {err}"),
        )
    })
}

#[test]
fn a9_validation_negatives() {
    criterion(9, "validation negatives", || {
        let dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("../..")
            .join("fixtures");
        let mut corrupt: Vec<String> = std::fs::read_dir(&dir)
            .map_err(|e| e.to_string())?
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .filter(|n| n.starts_with("corrupt_") && n.ends_with(".json"))
            .collect();
        corrupt.sort();
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
        ensure(
            corrupt == expectations.iter().map(|(f, _)| f.to_string()).collect::<Vec<_>>(),
            format!("corruption fixtures on disk: {corrupt:?}"),
        )?;
        for (file, needle) in expectations {
            let text = std::fs::read_to_string(dir.join(file)).map_err(|e| e.to_string())?;
            let space =
                equires::parse_space(&text).map_err(|e| format!("{file} must parse: {e}"))?;
            let report = validate_resolution(&space);
            ensure(!report.is_valid(), format!("{file} passed validation"))?;
            ensure(
                report.problems.iter().any(|p| p.contains(needle)),
                format!("{file}: no problem contains '{needle}': {:?}", report.problems),
            )?;
        }
        Ok(())
    })
}

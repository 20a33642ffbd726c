//! Randomized invariants spanning several modules: algebraic identities of the
//! representation calculus, grading bookkeeping of the assembled theories, and
//! exactness properties of the localization map. These complement the fixed-value
//! unit tests inside each module by quantifying over whole input families.

use num::{One, Zero};
use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

use equires_core::cochain::{cochain_complex, cohomology, cohomology_integral, pullback_complex};
use equires_core::groups::{
    cyclic, dihedral, irreducibles, localize_char, symmetric, tensor, GroupDesc, InclusionData,
    IrredLabel, RepRingElem, SubgroupInclusion,
};
use equires_core::linalg::{Int, Rat, ZMat};
use equires_core::resolution::{
    build_mobius_example, build_trivial_action, simplicial, CellComplex, LocalSystem,
};
use equires_core::theories::{
    assemble_complex, delocalized_cohomology, equivariant_cohomology, localization_map,
    Coefficients,
};

// ---------------------------------------------------------------------------
// Strategies.
// ---------------------------------------------------------------------------

/// A small simplicial complex: 1–4 facets on up to 6 vertices, each of 1–3
/// distinct vertices, so the constructor never rejects.
fn complexes() -> impl Strategy<Value = CellComplex> {
    vec(btree_set(0..6usize, 1..=3), 1..=4).prop_map(|facets| {
        let facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|f| f.into_iter().collect())
            .collect();
        simplicial(&facets).expect("distinct vertices form a simplex")
    })
}

fn finite_groups() -> Vec<GroupDesc> {
    vec![
        GroupDesc::Finite(cyclic(2)),
        GroupDesc::Finite(cyclic(3)),
        GroupDesc::Finite(cyclic(4)),
        GroupDesc::Finite(symmetric(3)),
        GroupDesc::Finite(symmetric(4)),
        GroupDesc::Finite(dihedral(4)),
    ]
}

/// A virtual element with the given coefficients over the group's windowed labels.
fn element(labels: &[(IrredLabel, Int)], coeffs: &[i64]) -> RepRingElem {
    let mut e = RepRingElem::zero();
    for ((label, _), &c) in labels.iter().zip(coeffs) {
        if c != 0 {
            e.add_term(label.clone(), Int::from(c));
        }
    }
    e
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    vec(-3i64..=3, len)
}

// ---------------------------------------------------------------------------
// Representation calculus.
// ---------------------------------------------------------------------------

/// Restriction along a subgroup inclusion is a ring homomorphism: it commutes
/// with the tensor product on arbitrary virtual elements.
#[test]
fn restriction_is_a_ring_homomorphism() {
    let inclusions = vec![
        // ℤ₂ as the index-2 subgroup of ℤ₄.
        SubgroupInclusion::new(
            GroupDesc::Finite(cyclic(4)),
            GroupDesc::Finite(cyclic(2)),
            InclusionData::FiniteMap(vec![0, 2]),
        )
        .unwrap(),
        // The circle inside the torus as the first coordinate.
        SubgroupInclusion::new(
            GroupDesc::Torus(2),
            GroupDesc::Torus(1),
            InclusionData::WeightRestriction(vec![vec![1], vec![0]]),
        )
        .unwrap(),
        // The finite factor of S¹ × ℤ₂.
        SubgroupInclusion::new(
            GroupDesc::Product(vec![GroupDesc::circle(), GroupDesc::Finite(cyclic(2))]),
            GroupDesc::Finite(cyclic(2)),
            InclusionData::Factor {
                index: 1,
                inner: Box::new(InclusionData::Identity),
            },
        )
        .unwrap(),
        // The trivial subgroup of S¹: restriction is the virtual dimension.
        SubgroupInclusion::new(GroupDesc::circle(), GroupDesc::trivial(), InclusionData::Trivial)
            .unwrap(),
    ];
    let mut runner = proptest::test_runner::TestRunner::default();
    for incl in inclusions {
        let labels = irreducibles(incl.big(), 2).unwrap();
        let strategy = (coeffs(labels.len()), coeffs(labels.len()));
        runner
            .run(&strategy, |(ca, cb)| {
                let a = element(&labels, &ca);
                let b = element(&labels, &cb);
                let big_product = tensor(incl.big(), &a, &b).unwrap();
                let restricted_product = incl.rep_restrict(&big_product).unwrap();
                let product_of_restrictions = tensor(
                    incl.small(),
                    &incl.rep_restrict(&a).unwrap(),
                    &incl.rep_restrict(&b).unwrap(),
                )
                .unwrap();
                prop_assert_eq!(restricted_product, product_of_restrictions);
                Ok(())
            })
            .unwrap();
    }
}

proptest! {
    /// The character-to-polynomial localization is multiplicative up to the
    /// degree truncation, on arbitrary windowed torus elements.
    #[test]
    fn localization_is_multiplicative_on_torus_elements(
        rank in 1..=2usize,
        ca in coeffs(25),
        cb in coeffs(25),
    ) {
        let g = GroupDesc::Torus(rank);
        let labels = irreducibles(&g, 2).unwrap();
        let a = element(&labels, &ca[..labels.len()]);
        let b = element(&labels, &cb[..labels.len()]);
        let product = tensor(&g, &a, &b).unwrap();
        let la = localize_char(&g, &a, 4).unwrap();
        let lb = localize_char(&g, &b, 4).unwrap();
        prop_assert_eq!(la.mul(&lb).unwrap(), localize_char(&g, &product, 4).unwrap());
    }

    /// The degree-0 component of a localized character is the virtual dimension,
    /// whatever the group.
    #[test]
    fn localization_starts_at_the_virtual_dimension(
        which in 0..6usize,
        c in coeffs(12),
    ) {
        let g = finite_groups()[which].clone();
        let labels = irreducibles(&g, 1).unwrap();
        let e = element(&labels, &c[..labels.len()]);
        let dim = e.virtual_dim(&g).unwrap();
        let l = localize_char(&g, &e, 2).unwrap();
        prop_assert_eq!(l.component(0), [Rat::from(dim)]);
    }
}

// ---------------------------------------------------------------------------
// Grading bookkeeping of the assembled theories.
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// For a trivially acted-on complex, the equivariant dimensions are the
    /// convolution of the plain cohomology with the invariant-polynomial
    /// dimensions: finite groups change nothing, the circle shifts by two, the
    /// 2-torus shifts with multiplicity j + 1.
    #[test]
    fn trivial_actions_convolve_the_polynomial_ring(x in complexes(), which in 0..6usize) {
        let plain = equivariant_cohomology(&build_trivial_action(GroupDesc::trivial(), x.clone()), 4)
            .unwrap()
            .dims;
        let finite = equivariant_cohomology(&build_trivial_action(finite_groups()[which].clone(), x.clone()), 4)
            .unwrap()
            .dims;
        prop_assert_eq!(&finite, &plain);
        let circle = equivariant_cohomology(&build_trivial_action(GroupDesc::circle(), x.clone()), 4)
            .unwrap()
            .dims;
        let torus = equivariant_cohomology(&build_trivial_action(GroupDesc::Torus(2), x), 4)
            .unwrap()
            .dims;
        for q in 0..=4 {
            let conv: usize = (0..=q / 2).map(|j| plain[q - 2 * j]).sum();
            prop_assert_eq!(circle[q], conv);
            let weighted: usize = (0..=q / 2).map(|j| (j + 1) * plain[q - 2 * j]).sum();
            prop_assert_eq!(torus[q], weighted);
        }
    }

    /// Window growth: circle dimensions grow by exactly two copies of the plain
    /// cohomology per window step (the two new weights), and finite-group
    /// dimensions do not depend on the window at all.
    #[test]
    fn window_growth_adds_exactly_the_new_labels(x in complexes(), which in 0..6usize) {
        let circle = build_trivial_action(GroupDesc::circle(), x.clone());
        let base = delocalized_cohomology(&circle, 1).unwrap().dims;
        prop_assert_eq!(base[0] % 3, 0);
        prop_assert_eq!(base[1] % 3, 0);
        let step = [base[0] / 3, base[1] / 3];
        for w in 1..=3usize {
            let dims = delocalized_cohomology(&circle, w).unwrap().dims;
            prop_assert_eq!(dims[0], (2 * w + 1) * step[0]);
            prop_assert_eq!(dims[1], (2 * w + 1) * step[1]);
        }
        let finite = build_trivial_action(finite_groups()[which].clone(), x);
        let first = delocalized_cohomology(&finite, 1).unwrap().dims;
        for w in 2..=3usize {
            prop_assert_eq!(&delocalized_cohomology(&finite, w).unwrap().dims, &first);
        }
    }

    /// Integer and rational cohomology of a cell complex agree in rank, and the
    /// simplicial complexes in this size range carry no torsion.
    #[test]
    fn integral_and_rational_ranks_agree(x in complexes()) {
        let sys = LocalSystem::trivial(&x, 1);
        let (c, layout) = cochain_complex(&x, &sys).unwrap();
        let zdiffs: Vec<ZMat> = (0..c.len() - 1)
            .map(|q| {
                let mut z = ZMat::zero(c.rank(q + 1), c.rank(q));
                for (r, row) in c.diff(q).to_dense().into_iter().enumerate() {
                    for (col, v) in row.into_iter().enumerate() {
                        if !v.is_zero() {
                            assert!(v.denom().is_one());
                            z.set(r, col, v.numer().clone());
                        }
                    }
                }
                z
            })
            .collect();
        let ranks: Vec<usize> = (0..c.len()).map(|q| layout.degree_rank(q)).collect();
        let hz = cohomology_integral(&ranks, &zdiffs).unwrap();
        prop_assert_eq!(&hz.dims, &cohomology(&c).dims);
        prop_assert!(hz.torsion.iter().all(|t| t.is_empty()));
    }
}

// ---------------------------------------------------------------------------
// Localization map exactness.
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The localization map is defined on cohomology: adding an arbitrary
    /// coboundary to a top-degree cocycle never changes the localized classes,
    /// and the map is linear on class coordinates.
    #[test]
    fn localization_descends_to_classes(eta in coeffs(24), scale in 1..=3i64) {
        let s = build_mobius_example();
        let window = 2;
        let assembled = assemble_complex(&s, Coefficients::Rep(window)).unwrap();
        let pullback = pullback_complex(&assembled.total, &assembled.parts).unwrap();
        let rank0 = pullback.complex().rank(0);
        let rank1 = pullback.complex().rank(1);
        prop_assume!(eta.len() >= rank0);

        // A fixed degree-1 cocycle with nontrivial localized classes, the odd
        // weight-symmetric combination, in ambient coordinates.
        let mut cocycle = vec![Rat::zero(); rank1];
        cocycle[0] = Rat::one();
        let base = localization_map(&s, window, 1, &pullback.realize(1, &cocycle), 3).unwrap();

        // The same class shifted by d(eta) and rescaled.
        let small_eta: Vec<Rat> = eta[..rank0].iter().map(|&v| Rat::from(Int::from(v))).collect();
        let d_eta = pullback.complex().diff(0).mul_vec(&small_eta);
        let shifted: Vec<Rat> = cocycle
            .iter()
            .zip(&d_eta)
            .map(|(z, b)| (z + b) * Rat::from(Int::from(scale)))
            .collect();
        let moved = localization_map(&s, window, 1, &pullback.realize(1, &shifted), 3).unwrap();

        prop_assert_eq!(base.len(), moved.len());
        for (a, b) in base.iter().zip(&moved) {
            prop_assert_eq!(a.j, b.j);
            let rescaled: Vec<Rat> = a
                .class
                .iter()
                .map(|v| v * Rat::from(Int::from(scale)))
                .collect();
            prop_assert_eq!(&rescaled, &b.class);
        }
    }
}

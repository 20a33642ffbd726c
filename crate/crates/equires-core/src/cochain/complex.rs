//! Graded complexes of free modules with exact differentials, cellular cochain
//! complexes with local coefficients, and cohomology (rational dimensions and integer
//! invariant factors).

use num::{One, Zero};

use crate::linalg::{integer_kernel_basis, smith_normal_form, Int, QMat, Rat, ZMat};
use crate::resolution::{CellComplex, LocalSystem};

use super::error::CochainError;

/// A non-negatively graded cochain complex of finite free modules over ℚ with exact
/// sparse differentials. `diffs[q]` maps degree q to degree q+1; construction verifies
/// that consecutive differentials compose to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    ranks: Vec<usize>,
    diffs: Vec<QMat>,
}

impl Complex {
    pub fn new(ranks: Vec<usize>, diffs: Vec<QMat>) -> Result<Self, CochainError> {
        if ranks.is_empty() {
            return Err(CochainError::Invalid(
                "a complex needs at least one graded piece".into(),
            ));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(CochainError::Invalid(format!(
                "{} differentials for {} graded pieces",
                diffs.len(),
                ranks.len()
            )));
        }
        for (q, d) in diffs.iter().enumerate() {
            if d.nrows() != ranks[q + 1] || d.ncols() != ranks[q] {
                return Err(CochainError::Invalid(format!(
                    "differential at degree {q} is {}x{}, expected {}x{}",
                    d.nrows(),
                    d.ncols(),
                    ranks[q + 1],
                    ranks[q]
                )));
            }
        }
        for q in 0..diffs.len().saturating_sub(1) {
            if !diffs[q + 1].mul(&diffs[q]).is_zero_mat() {
                return Err(CochainError::DifferentialSquare { degree: q });
            }
        }
        Ok(Complex { ranks, diffs })
    }

    /// The complex with a single zero module (0 → 0).
    pub fn trivial() -> Self {
        Complex {
            ranks: vec![0],
            diffs: Vec::new(),
        }
    }

    /// Number of graded pieces (degrees 0..len).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank of the degree-q module; zero outside the stored range.
    pub fn rank(&self, q: usize) -> usize {
        self.ranks.get(q).copied().unwrap_or(0)
    }

    pub fn diff_ref(&self, q: usize) -> Option<&QMat> {
        self.diffs.get(q)
    }

    /// The differential out of degree q, materialized with the right shape even at the
    /// top of the grading range (where it is the zero map to the zero module).
    pub fn diff(&self, q: usize) -> QMat {
        match self.diffs.get(q) {
            Some(d) => d.clone(),
            None => QMat::zero(self.rank(q + 1), self.rank(q)),
        }
    }

    /// Degreewise direct sum; the result spans the longest input grading range.
    pub fn direct_sum(parts: &[&Complex]) -> Complex {
        let len = parts.iter().map(|p| p.len()).max().unwrap_or(1);
        let ranks: Vec<usize> = (0..len)
            .map(|q| parts.iter().map(|p| p.rank(q)).sum())
            .collect();
        let diffs: Vec<QMat> = (0..len.saturating_sub(1))
            .map(|q| {
                let blocks: Vec<QMat> = parts.iter().map(|p| p.diff(q)).collect();
                let refs: Vec<&QMat> = blocks.iter().collect();
                QMat::block_diag(&refs)
            })
            .collect();
        Complex { ranks, diffs }
    }
}

/// Cohomology of a graded complex: rational dimensions per degree, and (for the integer
/// variant) the torsion invariant factors per degree in divisibility order.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedCohomology {
    pub dims: Vec<usize>,
    pub torsion: Vec<Vec<Int>>,
}

impl GradedCohomology {
    pub fn dim(&self, q: usize) -> usize {
        self.dims.get(q).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn even_dim(&self) -> usize {
        self.dims.iter().step_by(2).sum()
    }

    pub fn odd_dim(&self) -> usize {
        self.dims.iter().skip(1).step_by(2).sum()
    }
}

/// dim H^q = dim C^q − rank d_q − rank d_{q−1}, in exact rational arithmetic.
pub fn cohomology(x: &Complex) -> GradedCohomology {
    let ranks_of_diffs: Vec<usize> = x.diffs.iter().map(|d| d.rank()).collect();
    let dims = (0..x.len())
        .map(|q| {
            let out = ranks_of_diffs.get(q).copied().unwrap_or(0);
            let into = if q == 0 {
                0
            } else {
                ranks_of_diffs.get(q - 1).copied().unwrap_or(0)
            };
            x.rank(q) - out - into
        })
        .collect();
    GradedCohomology {
        torsion: vec![Vec::new(); x.len()],
        dims,
    }
}

/// Integer cohomology of a complex of free ℤ-modules: free rank and torsion invariant
/// factors per degree, via saturated integer kernels and Smith normal form.
pub fn cohomology_integral(
    ranks: &[usize],
    diffs: &[ZMat],
) -> Result<GradedCohomology, CochainError> {
    if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
        return Err(CochainError::Invalid(format!(
            "{} differentials for {} graded pieces",
            diffs.len(),
            ranks.len()
        )));
    }
    for (q, d) in diffs.iter().enumerate() {
        if d.nrows() != ranks[q + 1] || d.ncols() != ranks[q] {
            return Err(CochainError::Invalid(format!(
                "integer differential at degree {q} has the wrong shape"
            )));
        }
    }
    for q in 0..diffs.len().saturating_sub(1) {
        if !diffs[q + 1].mul(&diffs[q]).is_zero_mat() {
            return Err(CochainError::DifferentialSquare { degree: q });
        }
    }
    let mut dims = Vec::with_capacity(ranks.len());
    let mut torsion = Vec::with_capacity(ranks.len());
    for q in 0..ranks.len() {
        // Saturated basis of the degree-q cocycles.
        let cocycles = match diffs.get(q) {
            Some(d) => integer_kernel_basis(d),
            None => (0..ranks[q])
                .map(|i| {
                    let mut v = vec![Int::zero(); ranks[q]];
                    v[i] = Int::one();
                    v
                })
                .collect(),
        };
        let kernel_rank = cocycles.len();
        if q == 0 {
            dims.push(kernel_rank);
            torsion.push(Vec::new());
            continue;
        }
        let prev = &diffs[q - 1];
        // Coboundaries land in the saturated cocycle lattice, so their coordinates in
        // that basis are integral; solve rationally and read the integers back off.
        let z_rat = QMat::from_columns(
            ranks[q],
            &cocycles
                .iter()
                .map(|v| v.iter().map(|x| Rat::from(x.clone())).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        );
        let b_rat = QMat::from_dense(
            prev.to_dense()
                .into_iter()
                .map(|row| row.into_iter().map(Rat::from).collect())
                .collect(),
        );
        let coords = z_rat.solve(&b_rat).ok_or_else(|| {
            CochainError::Invalid(format!(
                "coboundaries at degree {q} do not lie in the cocycle lattice"
            ))
        })?;
        let mut coords_int = ZMat::zero(kernel_rank, prev.ncols());
        for (r, row) in coords.to_dense().into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    if !v.denom().is_one() {
                        return Err(CochainError::Invalid(format!(
                            "non-integral coboundary coordinate at degree {q}"
                        )));
                    }
                    coords_int.set(r, c, v.numer().clone());
                }
            }
        }
        let snf = smith_normal_form(&coords_int);
        dims.push(kernel_rank - snf.rank());
        torsion.push(snf.torsion());
    }
    Ok(GradedCohomology { dims, torsion })
}

/// How cochain coordinates are laid out for a cellular complex with a fixed fiber: the
/// degree-q module is the concatenation of one fiber block per q-cell, cells in
/// increasing id order.
#[derive(Clone, Debug)]
pub struct CochainLayout {
    fiber: usize,
    cells_by_dim: Vec<Vec<usize>>,
}

impl CochainLayout {
    pub fn new(complex: &CellComplex, fiber: usize) -> Self {
        let top = complex.dim();
        let cells_by_dim = (0..=top).map(|q| complex.cells_of_dim(q)).collect();
        CochainLayout {
            fiber,
            cells_by_dim,
        }
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber
    }

    pub fn degrees(&self) -> usize {
        self.cells_by_dim.len()
    }

    pub fn cells(&self, q: usize) -> &[usize] {
        self.cells_by_dim
            .get(q)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn degree_rank(&self, q: usize) -> usize {
        self.cells(q).len() * self.fiber
    }

    /// Degree and coordinate offset of a cell's fiber block.
    pub fn position(&self, cell: usize) -> Option<(usize, usize)> {
        for (q, cells) in self.cells_by_dim.iter().enumerate() {
            if let Ok(idx) = cells.binary_search(&cell) {
                return Some((q, idx * self.fiber));
            }
        }
        None
    }
}

/// Cellular cochains with coefficients in a flat system: C^q = ⊕_{q-cells} fiber and
/// (du)(σ) = Σ_τ [σ:τ] · transport_{τ→σ}(u(τ)). Rejects non-flat systems, naming a cell
/// where d² fails.
pub fn cochain_complex(
    complex: &CellComplex,
    system: &LocalSystem,
) -> Result<(Complex, CochainLayout), CochainError> {
    let layout = CochainLayout::new(complex, system.dim());
    let fiber = system.dim();
    let mut diffs = Vec::new();
    for q in 0..layout.degrees().saturating_sub(1) {
        let source = layout.cells(q);
        let target = layout.cells(q + 1);
        let mut d = QMat::zero(target.len() * fiber, source.len() * fiber);
        for (t_idx, &sigma) in target.iter().enumerate() {
            for (entry, &(tau, inc)) in complex.cell(sigma).boundary.iter().enumerate() {
                let s_idx = source
                    .binary_search(&tau)
                    .expect("boundary face has dimension one lower");
                let transport = system.transport(sigma, entry);
                let sign = Rat::from(Int::from(inc));
                for (r, row) in transport.to_dense().into_iter().enumerate() {
                    for (c, v) in row.into_iter().enumerate() {
                        if !v.is_zero() {
                            d.add_entry(t_idx * fiber + r, s_idx * fiber + c, sign.clone() * v);
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    for q in 0..diffs.len().saturating_sub(1) {
        let square = diffs[q + 1].mul(&diffs[q]);
        if !square.is_zero_mat() {
            let bad_row = (0..square.nrows())
                .find(|&r| !square.row(r).is_empty())
                .expect("nonzero matrix has a nonzero row");
            let cell = layout.cells(q + 2)[bad_row / fiber.max(1)];
            return Err(CochainError::NotFlat { cell });
        }
    }
    let ranks: Vec<usize> = (0..layout.degrees()).map(|q| layout.degree_rank(q)).collect();
    let complex = Complex { ranks, diffs };
    Ok((complex, layout))
}

/// Cohomology class representatives for a complex: per degree, cocycle columns that
/// extend a basis of the coboundaries, plus the data needed to express an arbitrary
/// cocycle in those classes.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    /// Per degree: matrix whose columns are class representatives (cocycles).
    reps: Vec<QMat>,
    /// Per degree: [coboundary generators | representatives], used to reduce a cocycle.
    express: Vec<QMat>,
}

impl CohomologyBasis {
    pub fn dim(&self, q: usize) -> usize {
        self.reps.get(q).map(|m| m.ncols()).unwrap_or(0)
    }

    pub fn degrees(&self) -> usize {
        self.reps.len()
    }

    /// The i-th class representative in degree q, as a cochain vector.
    pub fn representative(&self, q: usize, i: usize) -> Vec<Rat> {
        self.reps[q].column(i)
    }

    pub fn representatives(&self, q: usize) -> &QMat {
        &self.reps[q]
    }

    /// Coordinates of a cocycle's class in the degree-q basis; `None` when the vector is
    /// not a cocycle (not in the span of coboundaries and representatives).
    pub fn class_coords(&self, q: usize, vec: &[Rat]) -> Option<Vec<Rat>> {
        let express = &self.express[q];
        let sol = express.solve_vec(vec)?;
        let reps = self.reps[q].ncols();
        Some(sol[express.ncols() - reps..].to_vec())
    }

    /// The matrix of the map induced on degree-q cohomology by a cochain-level map into
    /// the complex this basis belongs to. `None` if some class fails to map to a cocycle.
    pub fn induced_map(&self, q: usize, source: &CohomologyBasis, block: &QMat) -> Option<QMat> {
        let cols: Option<Vec<Vec<Rat>>> = (0..source.dim(q))
            .map(|i| {
                let image = block.mul_vec(&source.representative(q, i));
                self.class_coords(q, &image)
            })
            .collect();
        Some(QMat::from_columns(self.dim(q), &cols?))
    }
}

/// Canonical class representatives for every degree of a complex.
pub fn cohomology_basis(x: &Complex) -> CohomologyBasis {
    let mut reps = Vec::with_capacity(x.len());
    let mut express = Vec::with_capacity(x.len());
    for q in 0..x.len() {
        let cocycles = x.diff(q).kernel_basis();
        let coboundaries = if q == 0 {
            QMat::zero(x.rank(0), 0)
        } else {
            x.diff(q - 1)
        };
        // Pivot through [B | Z]: cocycle columns that pick up a pivot extend the
        // coboundary span and represent a basis of H^q.
        let z_mat = QMat::from_columns(x.rank(q), &cocycles);
        let stacked = coboundaries.hstack(&z_mat);
        let pivots = stacked.rref().pivots;
        let chosen: Vec<Vec<Rat>> = pivots
            .iter()
            .filter(|&&c| c >= coboundaries.ncols())
            .map(|&c| z_mat.column(c - coboundaries.ncols()))
            .collect();
        let rep_mat = QMat::from_columns(x.rank(q), &chosen);
        express.push(coboundaries.hstack(&rep_mat));
        reps.push(rep_mat);
    }
    CohomologyBasis { reps, express }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, rat};
    use crate::resolution::{circle_loop, interval, point, simplicial_sphere, Monodromy};
    use crate::{groups::GroupDesc, resolution::borel_fiber_system};

    fn trivial_complex_of(space: &CellComplex) -> Complex {
        let sys = LocalSystem::trivial(space, 1);
        cochain_complex(space, &sys).unwrap().0
    }

    /// Independent dense fraction-free rank over the integers, for cross-checking the
    /// sparse elimination. Deliberately shares no code with the production path.
    fn dense_rank(mat: &QMat) -> usize {
        let mut m: Vec<Vec<Rat>> = mat.to_dense();
        let (nr, nc) = (m.len(), mat.ncols());
        let mut rank = 0;
        for col in 0..nc {
            let Some(p) = (rank..nr).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].clone();
            for r in 0..nr {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col].clone() / inv.clone();
                    for c in 0..nc {
                        let sub = f.clone() * m[rank][c].clone();
                        m[r][c] = m[r][c].clone() - sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn basic_spaces_with_trivial_coefficients() {
        let h = cohomology(&trivial_complex_of(&point()));
        assert_eq!(h.dims, vec![1]);
        let h = cohomology(&trivial_complex_of(&interval()));
        assert_eq!(h.dims, vec![1, 0]);
        let h = cohomology(&trivial_complex_of(&circle_loop()));
        assert_eq!(h.dims, vec![1, 1]);
        let h = cohomology(&trivial_complex_of(&simplicial_sphere()));
        assert_eq!(h.dims, vec![1, 0, 1]);
        assert_eq!(h.even_dim(), 2);
        assert_eq!(h.odd_dim(), 0);
    }

    #[test]
    fn twisted_circle_kills_cohomology() {
        let space = circle_loop();
        let minus = QMat::from_dense(vec![vec![rat(-1)]]);
        let sys = LocalSystem::new(
            &space,
            1,
            vec![vec![], vec![QMat::identity(1), minus]],
        )
        .unwrap();
        let (x, _) = cochain_complex(&space, &sys).unwrap();
        let h = cohomology(&x);
        assert_eq!(h.dims, vec![0, 0]);
    }

    #[test]
    fn point_cohomology_is_the_fiber() {
        let space = point();
        let sys = LocalSystem::trivial(&space, 7);
        let (x, layout) = cochain_complex(&space, &sys).unwrap();
        assert_eq!(cohomology(&x).dims, vec![7]);
        assert_eq!(layout.position(0), Some((0, 0)));
    }

    #[test]
    fn borel_coefficients_on_twisted_circle() {
        // Degree-1 invariant polynomials with the orientation-reversing monodromy: the
        // local system has transport −1 around the loop, so both cohomology groups die.
        let space = circle_loop();
        let mut monodromy = Monodromy::trivial();
        monodromy.set(
            1,
            1,
            crate::groups::GroupAction {
                on_labels: crate::groups::LabelAction::WeightLinear(vec![vec![-1]]),
                on_lie: QMat::from_dense(vec![vec![rat(-1)]]),
            },
        );
        let (sys, _) = borel_fiber_system(&space, &GroupDesc::circle(), &monodromy, 1).unwrap();
        let (x, _) = cochain_complex(&space, &sys).unwrap();
        assert_eq!(cohomology(&x).dims, vec![0, 0]);
        let (sys0, _) = borel_fiber_system(&space, &GroupDesc::circle(), &monodromy, 0).unwrap();
        let (x0, _) = cochain_complex(&space, &sys0).unwrap();
        assert_eq!(cohomology(&x0).dims, vec![1, 1]);
    }

    #[test]
    fn non_flat_system_is_rejected_with_the_cell() {
        // On the 2-sphere, scale one transport into a triangle: d² picks up the mismatch.
        let space = simplicial_sphere();
        let mut transports: Vec<Vec<QMat>> = space
            .cells()
            .iter()
            .map(|c| vec![QMat::identity(1); c.boundary.len()])
            .collect();
        let two_cells: Vec<usize> = (0..space.len()).filter(|&i| space.cell(i).dim == 2).collect();
        let bad = two_cells[0];
        transports[bad][0] = QMat::from_dense(vec![vec![rat(2)]]);
        let sys = LocalSystem::new(&space, 1, transports).unwrap();
        match cochain_complex(&space, &sys) {
            Err(CochainError::NotFlat { cell }) => assert_eq!(cell, bad),
            other => panic!("expected NotFlat, got {other:?}"),
        }
    }

    #[test]
    fn random_flat_complexes_match_dense_oracle() {
        // Plant d = T_{q+1} ∘ d0 ∘ T_q⁻¹ with elementary unimodular T's; d² = 0 holds by
        // construction and the cohomology is known from the planted ranks.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..6 {
            let n0 = rng.gen_range(1..5);
            let n1 = rng.gen_range(1..6);
            let n2 = rng.gen_range(1..5);
            let r0 = rng.gen_range(0..=n0.min(n1));
            let r1 = rng.gen_range(0..=(n1 - r0).min(n2));
            // Planted maps in the standard basis.
            let mut d0 = QMat::zero(n1, n0);
            for i in 0..r0 {
                d0.set(i, i, rat(1));
            }
            let mut d1 = QMat::zero(n2, n1);
            for i in 0..r1 {
                // Rows past r0 of C^1 map on; columns 0..r0 are killed.
                d1.set(i, r0 + i, rat(1));
            }
            // Conjugate by random elementary ops, tracked as (op, inverse op) pairs.
            let mut t0 = QMat::identity(n0);
            let mut t1 = QMat::identity(n1);
            let mut t1_inv = QMat::identity(n1);
            let mut t2 = QMat::identity(n2);
            for _ in 0..8 {
                let (a, b) = (rng.gen_range(0..n1), rng.gen_range(0..n1));
                if a != b {
                    let c = rat(rng.gen_range(-2..3));
                    let mut e = QMat::identity(n1);
                    e.set(a, b, c.clone());
                    let mut e_inv = QMat::identity(n1);
                    e_inv.set(a, b, -c);
                    t1 = e.mul(&t1);
                    t1_inv = t1_inv.mul(&e_inv);
                }
                let (a, b) = (rng.gen_range(0..n0), rng.gen_range(0..n0));
                if a != b {
                    let mut e = QMat::identity(n0);
                    e.set(a, b, rat(rng.gen_range(-2..3)));
                    t0 = e.mul(&t0);
                }
                let (a, b) = (rng.gen_range(0..n2), rng.gen_range(0..n2));
                if a != b {
                    let mut e = QMat::identity(n2);
                    e.set(a, b, rat(rng.gen_range(-2..3)));
                    t2 = e.mul(&t2);
                }
            }
            let d0_twisted = t1.mul(&d0.mul(&t0));
            let d1_twisted = t2.mul(&d1.mul(&t1_inv));
            let x = Complex::new(vec![n0, n1, n2], vec![d0_twisted.clone(), d1_twisted.clone()])
                .unwrap();
            let h = cohomology(&x);
            assert_eq!(h.dims[0], n0 - r0);
            assert_eq!(h.dims[1], n1 - r0 - r1);
            assert_eq!(h.dims[2], n2 - r1);
            // Cross-check every rank against the independent dense elimination.
            assert_eq!(d0_twisted.rank(), dense_rank(&d0_twisted));
            assert_eq!(d1_twisted.rank(), dense_rank(&d1_twisted));
        }
    }

    #[test]
    fn integral_cohomology_reports_torsion() {
        // 0 → ℤ --(2)--> ℤ → 0 has H⁰ = 0, H¹ = ℤ/2.
        let mut d = ZMat::zero(1, 1);
        d.set(0, 0, Int::from(2));
        let h = cohomology_integral(&[1, 1], &[d]).unwrap();
        assert_eq!(h.dims, vec![0, 0]);
        assert_eq!(h.torsion[1], vec![Int::from(2)]);
        // The rational dimensions of the same complex see no torsion.
        let x = Complex::new(
            vec![1, 1],
            vec![QMat::from_dense(vec![vec![rat(2)]])],
        )
        .unwrap();
        assert_eq!(cohomology(&x).dims, vec![0, 0]);
    }

    #[test]
    fn integral_and_rational_dimensions_agree_on_cell_complexes() {
        for space in [point(), interval(), circle_loop(), simplicial_sphere()] {
            let sys = LocalSystem::trivial(&space, 1);
            let (x, layout) = cochain_complex(&space, &sys).unwrap();
            let zdiffs: Vec<ZMat> = (0..x.len() - 1)
                .map(|q| {
                    let mut z = ZMat::zero(x.rank(q + 1), x.rank(q));
                    for (r, row) in x.diff(q).to_dense().into_iter().enumerate() {
                        for (c, v) in row.into_iter().enumerate() {
                            if !v.is_zero() {
                                assert!(v.denom().is_one());
                                z.set(r, c, v.numer().clone());
                            }
                        }
                    }
                    z
                })
                .collect();
            let ranks: Vec<usize> = (0..x.len()).map(|q| layout.degree_rank(q)).collect();
            let hz = cohomology_integral(&ranks, &zdiffs).unwrap();
            assert_eq!(hz.dims, cohomology(&x).dims);
            assert!(hz.torsion.iter().all(|t| t.is_empty()));
        }
    }

    #[test]
    fn class_coordinates_reduce_modulo_coboundaries() {
        let space = interval();
        let sys = LocalSystem::trivial(&space, 1);
        let (x, _) = cochain_complex(&space, &sys).unwrap();
        let basis = cohomology_basis(&x);
        assert_eq!(basis.dim(0), 1);
        assert_eq!(basis.dim(1), 0);
        // The constant cochain (3, 3) is 3× the class of the representative.
        let coords = basis.class_coords(0, &[rat(3), rat(3)]).unwrap();
        assert_eq!(coords.len(), 1);
        let rep = basis.representative(0, 0);
        assert_eq!(rep[0].clone() * coords[0].clone(), rat(3));
        // (1, 0) is not closed: du = −1 on the edge ≠ 0... it still reduces in the span
        // test only if it is a cocycle; here d(1,0) ≠ 0, so there is no class.
        let d = x.diff(0);
        assert!(!d.mul_vec(&[rat(1), rat(0)]).iter().all(|v| v.is_zero()));
        // Express is over [B | reps]; (1,0) is not in that span for the interval.
        assert!(basis.class_coords(0, &[rat(1), rat(0)]).is_none());
        let half = frac(1, 2);
        assert_eq!(half.clone() + half, rat(1));
    }
}

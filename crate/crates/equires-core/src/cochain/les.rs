//! Short exact sequences of complexes and the induced long exact sequence in
//! cohomology: verification of the degreewise exactness data, construction of the
//! connecting maps by the zig-zag, and exactness checks at every node.

use std::collections::BTreeSet;

use num::Zero;

use crate::linalg::{QMat, Rat};

use super::complex::{cohomology_basis, Complex};
use super::error::CochainError;
use super::maps::{relative_complex, pullback_complex, ChainMap, PullbackPart};

/// The two maps of a short exact sequence 0 → sub → full → quotient → 0.
#[derive(Clone, Debug)]
pub struct LesMaps {
    pub inj: ChainMap,
    pub surj: ChainMap,
}

/// Outcome of a long-exact-sequence check: cohomology dimensions of the three
/// complexes, ranks of the connecting maps, and any exactness failures.
#[derive(Clone, Debug)]
pub struct LesReport {
    pub sub_dims: Vec<usize>,
    pub full_dims: Vec<usize>,
    pub quotient_dims: Vec<usize>,
    pub connecting_ranks: Vec<usize>,
    pub problems: Vec<String>,
}

impl LesReport {
    pub fn is_exact(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Verifies that (inj, surj) is a degreewise short exact sequence of the three
/// complexes, builds the connecting maps, and checks exactness of the long sequence in
/// cohomology at every node. A malformed short exact sequence is an error; exactness
/// failures (which would contradict the algebra) are listed in the report.
pub fn les_check(
    sub: &Complex,
    full: &Complex,
    quotient: &Complex,
    maps: &LesMaps,
) -> Result<LesReport, CochainError> {
    maps.inj.verify(sub, full).map_err(|e| {
        CochainError::NotShortExact(format!("sub → full is broken: {e}"))
    })?;
    maps.surj.verify(full, quotient).map_err(|e| {
        CochainError::NotShortExact(format!("full → quotient is broken: {e}"))
    })?;
    let n = sub.len().max(full.len()).max(quotient.len());
    for q in 0..n {
        let i = maps.inj.block(q, full.rank(q), sub.rank(q));
        let s = maps.surj.block(q, quotient.rank(q), full.rank(q));
        if i.rank() != sub.rank(q) {
            return Err(CochainError::NotShortExact(format!(
                "sub → full is not injective at degree {q}"
            )));
        }
        if s.rank() != quotient.rank(q) {
            return Err(CochainError::NotShortExact(format!(
                "full → quotient is not surjective at degree {q}"
            )));
        }
        if !s.mul(&i).is_zero_mat() {
            return Err(CochainError::NotShortExact(format!(
                "composite sub → quotient is nonzero at degree {q}"
            )));
        }
        if full.rank(q) != sub.rank(q) + quotient.rank(q) {
            return Err(CochainError::NotShortExact(format!(
                "ranks at degree {q} do not add up: {} ≠ {} + {}",
                full.rank(q),
                sub.rank(q),
                quotient.rank(q)
            )));
        }
    }

    let b_sub = cohomology_basis(sub);
    let b_full = cohomology_basis(full);
    let b_quot = cohomology_basis(quotient);
    let mut problems = Vec::new();

    // Induced maps on cohomology.
    let mut i_star: Vec<QMat> = Vec::with_capacity(n);
    let mut p_star: Vec<QMat> = Vec::with_capacity(n);
    for q in 0..n {
        let i = maps.inj.block(q, full.rank(q), sub.rank(q));
        let s = maps.surj.block(q, quotient.rank(q), full.rank(q));
        match induced(&b_full, q, &b_sub, &i) {
            Some(m) => i_star.push(m),
            None => {
                problems.push(format!(
                    "image of a sub class is not a cocycle of full at degree {q}"
                ));
                i_star.push(QMat::zero(dim_of(&b_full, q), dim_of(&b_sub, q)));
            }
        }
        match induced(&b_quot, q, &b_full, &s) {
            Some(m) => p_star.push(m),
            None => {
                problems.push(format!(
                    "image of a full class is not a cocycle of quotient at degree {q}"
                ));
                p_star.push(QMat::zero(dim_of(&b_quot, q), dim_of(&b_full, q)));
            }
        }
    }

    // Connecting maps δ_q: H^q(quotient) → H^{q+1}(sub) by lift, differentiate, pull in.
    let mut delta: Vec<QMat> = Vec::with_capacity(n);
    for q in 0..n {
        let target_dim = dim_of(&b_sub, q + 1);
        let source_dim = dim_of(&b_quot, q);
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(source_dim);
        let s = maps.surj.block(q, quotient.rank(q), full.rank(q));
        let i_next = maps.inj.block(q + 1, full.rank(q + 1), sub.rank(q + 1));
        for idx in 0..source_dim {
            let w = b_quot.representative(q, idx);
            let Some(lift) = s.solve_vec(&w) else {
                problems.push(format!(
                    "quotient class {idx} at degree {q} does not lift through the surjection"
                ));
                cols.push(vec![Rat::zero(); target_dim]);
                continue;
            };
            let dy = full.diff(q).mul_vec(&lift);
            let Some(z) = i_next.solve_vec(&dy) else {
                problems.push(format!(
                    "differentiated lift of quotient class {idx} at degree {q} is not in the sub complex"
                ));
                cols.push(vec![Rat::zero(); target_dim]);
                continue;
            };
            let Some(coords) = class_coords_of(&b_sub, q + 1, &z) else {
                problems.push(format!(
                    "connecting image of quotient class {idx} at degree {q} is not a cocycle"
                ));
                cols.push(vec![Rat::zero(); target_dim]);
                continue;
            };
            cols.push(coords);
        }
        delta.push(QMat::from_columns(target_dim, &cols));
    }

    // Exactness at each node of ... → H^q(sub) → H^q(full) → H^q(quot) → H^{q+1}(sub) → ...
    for q in 0..n {
        let at_sub_in = if q == 0 { 0 } else { delta[q - 1].rank() };
        if !composite_zero(&i_star[q], if q == 0 { None } else { Some(&delta[q - 1]) }) {
            problems.push(format!("i* ∘ δ is nonzero into degree {q}"));
        }
        if at_sub_in + i_star[q].rank() != dim_of(&b_sub, q) {
            problems.push(format!(
                "exactness fails at H^{q}(sub): rank δ = {}, rank i* = {}, dim = {}",
                at_sub_in,
                i_star[q].rank(),
                dim_of(&b_sub, q)
            ));
        }
        if !p_star[q].mul(&i_star[q]).is_zero_mat() {
            problems.push(format!("p* ∘ i* is nonzero at degree {q}"));
        }
        if i_star[q].rank() + p_star[q].rank() != dim_of(&b_full, q) {
            problems.push(format!(
                "exactness fails at H^{q}(full): rank i* = {}, rank p* = {}, dim = {}",
                i_star[q].rank(),
                p_star[q].rank(),
                dim_of(&b_full, q)
            ));
        }
        if !delta[q].mul(&p_star[q]).is_zero_mat() {
            problems.push(format!("δ ∘ p* is nonzero at degree {q}"));
        }
        if p_star[q].rank() + delta[q].rank() != dim_of(&b_quot, q) {
            problems.push(format!(
                "exactness fails at H^{q}(quotient): rank p* = {}, rank δ = {}, dim = {}",
                p_star[q].rank(),
                delta[q].rank(),
                dim_of(&b_quot, q)
            ));
        }
    }

    Ok(LesReport {
        sub_dims: (0..n).map(|q| dim_of(&b_sub, q)).collect(),
        full_dims: (0..n).map(|q| dim_of(&b_full, q)).collect(),
        quotient_dims: (0..n).map(|q| dim_of(&b_quot, q)).collect(),
        connecting_ranks: delta.iter().map(|d| d.rank()).collect(),
        problems,
    })
}

fn dim_of(basis: &super::complex::CohomologyBasis, q: usize) -> usize {
    if q < basis.degrees() {
        basis.dim(q)
    } else {
        0
    }
}

fn class_coords_of(
    basis: &super::complex::CohomologyBasis,
    q: usize,
    vec: &[Rat],
) -> Option<Vec<Rat>> {
    if q >= basis.degrees() {
        return if vec.iter().all(|v| v.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    basis.class_coords(q, vec)
}

fn induced(
    target: &super::complex::CohomologyBasis,
    q: usize,
    source: &super::complex::CohomologyBasis,
    block: &QMat,
) -> Option<QMat> {
    let source_dim = dim_of(source, q);
    let target_dim = dim_of(target, q);
    let cols: Option<Vec<Vec<Rat>>> = (0..source_dim)
        .map(|i| {
            let image = block.mul_vec(&source.representative(q, i));
            class_coords_of(target, q, &image)
        })
        .collect();
    Some(QMat::from_columns(target_dim, &cols?))
}

fn composite_zero(left: &QMat, right: Option<&QMat>) -> bool {
    match right {
        Some(r) => left.mul(r).is_zero_mat(),
        None => true,
    }
}

/// Assembles the short exact sequence of Eq-style compatibility complexes for a chosen
/// relative part set: sub = the relative complex, full = the pullback complex, quotient
/// = the direct sum of the zeroed parts' base complexes, with the inclusion and the
/// projection as the two maps.
pub fn les_suite(
    total: &Complex,
    parts: &[PullbackPart],
    zeroed: &BTreeSet<usize>,
    order: &[(usize, usize)],
) -> Result<(Complex, Complex, Complex, LesMaps), CochainError> {
    let full = pullback_complex(total, parts)?;
    let sub = relative_complex(total, parts, zeroed, order)?;
    let picked: Vec<&Complex> = zeroed.iter().map(|&s| &parts[s].base).collect();
    let quotient = Complex::direct_sum(&picked);

    let n = full.complex().len().max(sub.complex().len()).max(quotient.len());
    let mut inj_blocks = Vec::with_capacity(n);
    let mut surj_blocks = Vec::with_capacity(n);
    for q in 0..n {
        let e_full = full.embedding(q);
        let e_sub = sub.embedding(q);
        let inj = e_full.solve(e_sub).ok_or_else(|| {
            CochainError::Invalid(format!(
                "relative solutions do not satisfy the full constraints at degree {q}"
            ))
        })?;
        inj_blocks.push(inj);
        let offs = full.block_offsets(q);
        let mut rows: Vec<usize> = Vec::new();
        for &s in zeroed {
            rows.extend(offs[s + 1]..offs[s + 1] + parts[s].base.rank(q));
        }
        surj_blocks.push(e_full.select_rows(&rows));
    }
    Ok((
        sub.complex().clone(),
        full.complex().clone(),
        quotient,
        LesMaps {
            inj: ChainMap::new(inj_blocks),
            surj: ChainMap::new(surj_blocks),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::complex::{cochain_complex, cohomology};
    use crate::linalg::rat;
    use crate::resolution::{interval, point, LocalSystem};

    fn interval_complex() -> Complex {
        let space = interval();
        cochain_complex(&space, &LocalSystem::trivial(&space, 1)).unwrap().0
    }

    fn point_complex() -> Complex {
        let space = point();
        cochain_complex(&space, &LocalSystem::trivial(&space, 1)).unwrap().0
    }

    fn endpoint_part(v: usize) -> PullbackPart {
        let mut restrict = QMat::zero(1, 2);
        restrict.set(0, v, rat(1));
        PullbackPart {
            face: point_complex(),
            base: point_complex(),
            restriction: ChainMap::new(vec![restrict]),
            comparison: ChainMap::new(vec![QMat::identity(1)]),
        }
    }

    #[test]
    fn interval_relative_sequence_is_exact() {
        let total = interval_complex();
        let parts = [endpoint_part(0), endpoint_part(1)];
        for zeroed in [
            BTreeSet::new(),
            BTreeSet::from([0]),
            BTreeSet::from([1]),
            BTreeSet::from([0, 1]),
        ] {
            let (sub, full, quotient, maps) = les_suite(&total, &parts, &zeroed, &[]).unwrap();
            let report = les_check(&sub, &full, &quotient, &maps).unwrap();
            assert!(report.is_exact(), "problems: {:?}", report.problems);
            assert_eq!(report.full_dims, vec![1, 0]);
        }
        // The fully relative sequence has the connecting map carrying both quotient
        // classes onto H¹ of the (interval, boundary) pair minus the image of p*.
        let all = BTreeSet::from([0, 1]);
        let (sub, full, quotient, maps) = les_suite(&total, &parts, &all, &[]).unwrap();
        assert_eq!(cohomology(&sub).dims, vec![0, 1]);
        let report = les_check(&sub, &full, &quotient, &maps).unwrap();
        assert_eq!(report.quotient_dims, vec![2, 0]);
        assert_eq!(report.connecting_ranks[0], 1);
    }

    #[test]
    fn zero_sub_detects_isomorphism() {
        let full = interval_complex();
        let quotient = interval_complex();
        let sub = Complex::new(vec![0, 0], vec![QMat::zero(0, 0)]).unwrap();
        let maps = LesMaps {
            inj: ChainMap::new(vec![QMat::zero(2, 0), QMat::zero(1, 0)]),
            surj: ChainMap::new(vec![QMat::identity(2), QMat::identity(1)]),
        };
        let report = les_check(&sub, &full, &quotient, &maps).unwrap();
        assert!(report.is_exact(), "problems: {:?}", report.problems);
        assert_eq!(report.full_dims, report.quotient_dims);
        assert!(report.connecting_ranks.iter().all(|&r| r == 0));
    }

    #[test]
    fn broken_sequences_are_rejected() {
        let full = interval_complex();
        let sub = Complex::new(vec![1, 0], vec![QMat::zero(0, 1)]).unwrap();
        // Not injective: the zero map from a 1-dimensional sub.
        let maps = LesMaps {
            inj: ChainMap::new(vec![QMat::zero(2, 1), QMat::zero(1, 0)]),
            surj: ChainMap::new(vec![QMat::identity(2), QMat::identity(1)]),
        };
        let err = les_check(&sub, &full, &full, &maps).unwrap_err();
        assert!(matches!(err, CochainError::NotShortExact(_)));
    }
}

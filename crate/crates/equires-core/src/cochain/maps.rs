//! Chain maps and compatibility (pullback/relative) complexes: the subcomplex of a
//! direct sum cut out by restriction-equals-comparison equations, realized through
//! exact kernel bases with the induced differential.

use std::collections::BTreeSet;

use crate::linalg::{QMat, Rat};

use super::complex::Complex;
use super::error::CochainError;

/// A degreewise linear map between graded complexes: `blocks[q]` maps the degree-q
/// module of the source into the degree-q module of the target. Missing degrees act as
/// zero maps of the appropriate shape.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    blocks: Vec<QMat>,
}

impl ChainMap {
    pub fn new(blocks: Vec<QMat>) -> Self {
        ChainMap { blocks }
    }

    pub fn degrees(&self) -> usize {
        self.blocks.len()
    }

    /// The degree-q block, materialized with the requested shape when absent.
    pub fn block(&self, q: usize, target_rank: usize, source_rank: usize) -> QMat {
        match self.blocks.get(q) {
            Some(b) => b.clone(),
            None => QMat::zero(target_rank, source_rank),
        }
    }

    /// Checks shapes and commutation with the differentials of the two complexes.
    pub fn verify(&self, source: &Complex, target: &Complex) -> Result<(), CochainError> {
        let n = source.len().max(target.len());
        for q in 0..n {
            let b = self.block(q, target.rank(q), source.rank(q));
            if b.nrows() != target.rank(q) || b.ncols() != source.rank(q) {
                return Err(CochainError::Invalid(format!(
                    "map block at degree {q} is {}x{}, expected {}x{}",
                    b.nrows(),
                    b.ncols(),
                    target.rank(q),
                    source.rank(q)
                )));
            }
        }
        for q in 0..n.saturating_sub(1) {
            let b_here = self.block(q, target.rank(q), source.rank(q));
            let b_next = self.block(q + 1, target.rank(q + 1), source.rank(q + 1));
            let left = target.diff(q).mul(&b_here);
            let right = b_next.mul(&source.diff(q));
            if left.sub(&right).is_zero_mat() {
                continue;
            }
            return Err(CochainError::NotChainMap { degree: q });
        }
        Ok(())
    }
}

/// One compatibility constraint: a face complex receiving both the restriction of the
/// total complex and the comparison map from a stratum base complex. The constraint on
/// a pair (u, v) is restriction(u) = comparison(v) in every degree.
#[derive(Clone, Debug)]
pub struct PullbackPart {
    pub face: Complex,
    pub base: Complex,
    /// Total → face.
    pub restriction: ChainMap,
    /// Base → face.
    pub comparison: ChainMap,
}

/// A compatibility complex realized as a kernel: per degree, a canonical basis of the
/// solutions inside total ⊕ (bases), the induced differential on those coordinates, and
/// the embedding back into the ambient direct sum.
#[derive(Clone, Debug)]
pub struct Pullback {
    complex: Complex,
    /// Per degree: ambient coordinates of the basis solutions (columns).
    embeddings: Vec<QMat>,
    /// Per degree: starting offsets of the total block and each part's base block in
    /// ambient coordinates; last entry is the ambient dimension.
    offsets: Vec<Vec<usize>>,
}

impl Pullback {
    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn embedding(&self, q: usize) -> &QMat {
        &self.embeddings[q]
    }

    pub fn degrees(&self) -> usize {
        self.embeddings.len()
    }

    /// Offsets of [total, part 0, part 1, ...] blocks in ambient degree-q coordinates,
    /// with the ambient dimension appended.
    pub fn block_offsets(&self, q: usize) -> &[usize] {
        &self.offsets[q]
    }

    /// Ambient coordinates of a solution given in pullback coordinates.
    pub fn realize(&self, q: usize, small: &[Rat]) -> Vec<Rat> {
        self.embeddings[q].mul_vec(small)
    }

    /// Pullback coordinates of an ambient vector; `None` when it violates a constraint.
    pub fn express(&self, q: usize, ambient: &[Rat]) -> Option<Vec<Rat>> {
        self.embeddings[q].solve_vec(ambient)
    }
}

fn assemble(
    total: &Complex,
    parts: &[PullbackPart],
    zeroed: &BTreeSet<usize>,
) -> Result<Pullback, CochainError> {
    for (s, part) in parts.iter().enumerate() {
        part.restriction.verify(total, &part.face).map_err(|e| match e {
            CochainError::NotChainMap { degree } => CochainError::Invalid(format!(
                "restriction of part {s} is not a chain map at degree {degree}"
            )),
            other => other,
        })?;
        part.comparison.verify(&part.base, &part.face).map_err(|e| match e {
            CochainError::NotChainMap { degree } => CochainError::Invalid(format!(
                "comparison of part {s} is not a chain map at degree {degree}"
            )),
            other => other,
        })?;
    }
    if let Some(&bad) = zeroed.iter().find(|&&s| s >= parts.len()) {
        return Err(CochainError::Invalid(format!(
            "relative part index {bad} out of range ({} parts)",
            parts.len()
        )));
    }
    let degrees = parts
        .iter()
        .flat_map(|p| [p.base.len(), p.face.len()])
        .chain([total.len()])
        .max()
        .unwrap_or(1);

    let mut offsets = Vec::with_capacity(degrees);
    let mut kernels: Vec<QMat> = Vec::with_capacity(degrees);
    for q in 0..degrees {
        let mut offs = vec![0, total.rank(q)];
        for part in parts {
            offs.push(offs.last().unwrap() + part.base.rank(q));
        }
        let ambient = *offs.last().unwrap();
        // Stack one row block per part: [R_s at the total block | −P_s at block s], and
        // an identity row block per zeroed part.
        let mut constraints = QMat::zero(0, ambient);
        for (s, part) in parts.iter().enumerate() {
            let r = part.restriction.block(q, part.face.rank(q), total.rank(q));
            let p = part.comparison.block(q, part.face.rank(q), part.base.rank(q));
            let mut block = QMat::zero(part.face.rank(q), ambient);
            for (row, entries) in r.rows().enumerate() {
                for (c, v) in entries {
                    block.add_entry(row, *c, v.clone());
                }
            }
            for (row, entries) in p.rows().enumerate() {
                for (c, v) in entries {
                    block.add_entry(row, offs[s + 1] + *c, -v.clone());
                }
            }
            constraints = constraints.vstack(&block);
        }
        for &s in zeroed {
            let n = parts[s].base.rank(q);
            let mut block = QMat::zero(n, ambient);
            for i in 0..n {
                block.set(i, offs[s + 1] + i, Rat::from(crate::linalg::Int::from(1)));
            }
            constraints = constraints.vstack(&block);
        }
        let kernel = constraints.kernel_basis();
        kernels.push(QMat::from_columns(ambient, &kernel));
        offsets.push(offs);
    }

    let mut diffs = Vec::with_capacity(degrees.saturating_sub(1));
    for q in 0..degrees.saturating_sub(1) {
        let mut blocks: Vec<QMat> = vec![total.diff(q)];
        for part in parts {
            blocks.push(part.base.diff(q));
        }
        let refs: Vec<&QMat> = blocks.iter().collect();
        let ambient_d = QMat::block_diag(&refs);
        let image = ambient_d.mul(&kernels[q]);
        let induced = kernels[q + 1].solve(&image).ok_or_else(|| {
            CochainError::Invalid(format!(
                "differential does not preserve the compatibility subspace at degree {q}"
            ))
        })?;
        diffs.push(induced);
    }
    let ranks: Vec<usize> = kernels.iter().map(|k| k.ncols()).collect();
    let complex = Complex::new(ranks, diffs)?;
    Ok(Pullback {
        complex,
        embeddings: kernels,
        offsets,
    })
}

/// The compatibility subcomplex of total ⊕ (part bases) cut out by
/// restriction(u) = comparison(v) for every part, with the induced differential.
pub fn pullback_complex(
    total: &Complex,
    parts: &[PullbackPart],
) -> Result<Pullback, CochainError> {
    assemble(total, parts, &BTreeSet::new())
}

/// The pullback complex with the listed parts' coordinates forced to zero. `order`
/// lists (deeper, shallower) pairs of part indices; the zeroed set must contain the
/// deeper part whenever it contains the shallower one.
pub fn relative_complex(
    total: &Complex,
    parts: &[PullbackPart],
    zeroed: &BTreeSet<usize>,
    order: &[(usize, usize)],
) -> Result<Pullback, CochainError> {
    for &(deeper, shallower) in order {
        if zeroed.contains(&shallower) && !zeroed.contains(&deeper) {
            return Err(CochainError::NotUpwardClosed(format!(
                "part {shallower} is zeroed but the deeper part {deeper} is not"
            )));
        }
    }
    assemble(total, parts, zeroed)
}

use std::fmt;

use super::scalar::{FieldScalar, Scalar};

/// Row-sparse exact matrix: each row holds `(column, value)` pairs sorted by column with
/// no explicit zeros. Dimension mismatches are programming errors and panic.
#[derive(Clone, PartialEq)]
pub struct SparseMat<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMat<T> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, T::one())]).collect();
        SparseMat {
            nrows: n,
            ncols: n,
            rows,
        }
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut mat = SparseMat::zero(nrows, ncols);
        for (r, c, v) in triplets {
            mat.add_entry(r, c, v);
        }
        mat
    }

    pub fn from_dense(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .into_iter()
            .map(|row| {
                assert_eq!(row.len(), ncols, "ragged dense matrix");
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseMat { nrows, ncols, rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.ncols]; self.nrows];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<(usize, T)>> {
        self.rows.iter()
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        assert!(r < self.nrows && c < self.ncols, "index out of bounds");
        match self.rows[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(i) => self.rows[r][i].1.clone(),
            Err(_) => T::zero(),
        }
    }

    /// Adds `v` to the entry at `(r, c)`.
    pub fn add_entry(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.nrows && c < self.ncols, "index out of bounds");
        if v.is_zero() {
            return;
        }
        match self.rows[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(i) => {
                let sum = self.rows[r][i].1.clone() + v;
                if sum.is_zero() {
                    self.rows[r].remove(i);
                } else {
                    self.rows[r][i].1 = sum;
                }
            }
            Err(i) => self.rows[r].insert(i, (c, v)),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        match self.rows[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(i) => {
                if v.is_zero() {
                    self.rows[r].remove(i);
                } else {
                    self.rows[r][i].1 = v;
                }
            }
            Err(i) => {
                if !v.is_zero() {
                    self.rows[r].insert(i, (c, v));
                }
            }
        }
    }

    pub fn is_zero_mat(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut out = SparseMat::zero(self.ncols, self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                out.rows[*c].push((r, v.clone()));
            }
        }
        // Rows were filled in increasing r for each c, already sorted.
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| (*c, v.clone() * s.clone()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (r, row) in other.rows.iter().enumerate() {
            for (c, v) in row {
                out.add_entry(r, *c, v.clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&(-T::one())))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in mul");
        let mut out = SparseMat::zero(self.nrows, other.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            for (k, v) in row {
                for (c, w) in &other.rows[*k] {
                    out.add_entry(r, *c, v.clone() * w.clone());
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * x`.
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.ncols, x.len(), "dimension mismatch in mul_vec");
        self.rows
            .iter()
            .map(|row| {
                row.iter().fold(T::zero(), |acc, (c, v)| {
                    acc + v.clone() * x[*c].clone()
                })
            })
            .collect()
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.ncols, "dimension mismatch in vstack");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SparseMat {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    /// Places `self` left of `other`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.nrows, other.nrows, "dimension mismatch in hstack");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.extend(b.iter().map(|(c, v)| (c + self.ncols, v.clone())));
                row
            })
            .collect();
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols + other.ncols,
            rows,
        }
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let nrows = blocks.iter().map(|b| b.nrows).sum();
        let ncols = blocks.iter().map(|b| b.ncols).sum();
        let mut out = SparseMat::zero(nrows, ncols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for (r, row) in b.rows.iter().enumerate() {
                out.rows[r0 + r] = row.iter().map(|(c, v)| (c0 + c, v.clone())).collect();
            }
            r0 += b.nrows;
            c0 += b.ncols;
        }
        out
    }

    /// Keeps the given rows (in the given order).
    pub fn select_rows(&self, keep: &[usize]) -> Self {
        let rows = keep.iter().map(|&r| self.rows[r].clone()).collect();
        SparseMat {
            nrows: keep.len(),
            ncols: self.ncols,
            rows,
        }
    }

    /// Exact rank; strategy chosen by the scalar (fraction-free integer elimination for
    /// both provided scalars).
    pub fn rank(&self) -> usize {
        T::rank_of(self)
    }
}

/// Reduced row echelon form together with its pivot columns.
pub struct Rref<T> {
    pub mat: SparseMat<T>,
    pub pivots: Vec<usize>,
}

impl<T: FieldScalar> SparseMat<T> {
    /// Reduced row echelon form with deterministic pivoting: columns are processed left to
    /// right and the first eligible row wins.
    pub fn rref(&self) -> Rref<T> {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            let pivot = match (r..rows.len())
                .find(|&i| rows[i].first().map(|(c, _)| *c) == Some(col))
            {
                Some(i) => i,
                None => continue,
            };
            rows.swap(r, pivot);
            let pval = rows[r][0].1.clone();
            if !pval.is_one() {
                for (_, v) in rows[r].iter_mut() {
                    *v = v.clone() / pval.clone();
                }
            }
            let prow = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                if let Ok(j) = row.binary_search_by_key(&col, |(c, _)| *c) {
                    let factor = row[j].1.clone();
                    *row = combine(row, &factor, &prow);
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        Rref {
            mat: SparseMat {
                nrows: self.nrows,
                ncols: self.ncols,
                rows,
            },
            pivots,
        }
    }

    /// Canonical kernel basis: one vector per free column, with a 1 in the free coordinate
    /// and the pivot coordinates solved from the reduced echelon form. Vectors are ordered
    /// by increasing free column.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let Rref { mat, pivots } = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.ncols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![T::zero(); self.ncols];
            vec[free] = T::one();
            for (row, &col) in pivots.iter().enumerate() {
                let entry = mat.get(row, free);
                if !entry.is_zero() {
                    vec[col] = -entry;
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Solves `self * X = rhs` columnwise, returning the canonical solution with all free
    /// variables set to zero, or `None` if any column is inconsistent.
    pub fn solve(&self, rhs: &SparseMat<T>) -> Option<SparseMat<T>> {
        assert_eq!(self.nrows, rhs.nrows, "dimension mismatch in solve");
        let aug = self.hstack(rhs);
        let Rref { mat, pivots } = aug.rref();
        // Any pivot landing in the augmented block means an inconsistent column.
        if pivots.iter().any(|&c| c >= self.ncols) {
            return None;
        }
        let mut x = SparseMat::zero(self.ncols, rhs.ncols);
        for (row, &col) in pivots.iter().enumerate() {
            for (c, v) in mat.row(row) {
                if *c >= self.ncols {
                    x.set(col, *c - self.ncols, v.clone());
                }
            }
        }
        Some(x)
    }

    /// Solves `self * x = rhs` for a single vector right-hand side.
    pub fn solve_vec(&self, rhs: &[T]) -> Option<Vec<T>> {
        // Build the one-column right-hand side directly: `from_dense` would drop the
        // column entirely for an empty `rhs`, losing the solution's shape.
        let mut rhs_mat = SparseMat::zero(rhs.len(), 1);
        for (r, v) in rhs.iter().enumerate() {
            if !v.is_zero() {
                rhs_mat.set(r, 0, v.clone());
            }
        }
        let x = self.solve(&rhs_mat)?;
        Some((0..self.ncols).map(|r| x.get(r, 0)).collect())
    }

    /// Matrix whose columns are the given (dense) vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<T>]) -> Self {
        let mut out = SparseMat::zero(nrows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    out.rows[r].push((c, v.clone()));
                }
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.nrows).map(|r| self.get(r, c)).collect()
    }
}

/// `row - factor * prow`, both sorted sparse rows.
fn combine<T: Scalar>(row: &[(usize, T)], factor: &T, prow: &[(usize, T)]) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(row.len() + prow.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < prow.len() {
        let take_row = j == prow.len() || (i < row.len() && row[i].0 < prow[j].0);
        let take_prow = i == row.len() || (j < prow.len() && prow[j].0 < row[i].0);
        let (col, val) = if take_row {
            let e = row[i].clone();
            i += 1;
            e
        } else if take_prow {
            let e = (prow[j].0, -(factor.clone() * prow[j].1.clone()));
            j += 1;
            e
        } else {
            let e = (
                row[i].0,
                row[i].1.clone() - factor.clone() * prow[j].1.clone(),
            );
            i += 1;
            j += 1;
            e
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

impl<T: Scalar> fmt::Debug for SparseMat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMat {}x{} [", self.nrows, self.ncols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::sparse::SparseMat;

/// An exact commutative-ring scalar.
///
/// Implementors choose their own exact rank strategy through [`Scalar::rank_of`]; both
/// provided instances route through fraction-free integer elimination so that no rank is
/// ever decided by approximate arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Exact rank of a sparse matrix over this scalar.
    fn rank_of(mat: &SparseMat<Self>) -> usize
    where
        Self: Sized;
}

/// Scalars that form a field; unlocks reduced row echelon form, kernels and solving.
pub trait FieldScalar: Scalar + Div<Output = Self> {}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn rank_of(mat: &SparseMat<Self>) -> usize {
        // Clear denominators row by row (rank-preserving), then eliminate over the
        // integers without introducing fractions.
        let rows = mat
            .rows()
            .map(|row| {
                let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| {
                    num::integer::lcm(acc, v.denom().clone())
                });
                row.iter()
                    .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
                    .collect()
            })
            .collect();
        fraction_free_rank(rows, mat.ncols())
    }
}

impl FieldScalar for BigRational {}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn rank_of(mat: &SparseMat<Self>) -> usize {
        fraction_free_rank(mat.rows().cloned().collect(), mat.ncols())
    }
}

/// Rank by one-step fraction-free elimination with content reduction.
///
/// Pivots are chosen in fixed column order (first eligible row wins), so the elimination
/// is deterministic. Rows are rescaled by their content gcd after every combination to
/// keep entries desk-sized.
fn fraction_free_rank(mut rows: Vec<Vec<(usize, BigInt)>>, ncols: usize) -> usize {
    for row in &mut rows {
        reduce_content(row);
    }
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = match (rank..rows.len()).find(|&i| leading_col(&rows[i]) == Some(col)) {
            Some(i) => i,
            None => continue,
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pval = prow[0].1.clone();
        for row in tail.iter_mut() {
            if leading_col(row) != Some(col) {
                continue;
            }
            let rval = row[0].1.clone();
            *row = combine_int(&pval, row, &rval, prow);
            reduce_content(row);
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn leading_col(row: &[(usize, BigInt)]) -> Option<usize> {
    row.first().map(|(c, _)| *c)
}

/// `a*row1 - b*row2` as a sorted sparse row.
fn combine_int(
    a: &BigInt,
    row1: &[(usize, BigInt)],
    b: &BigInt,
    row2: &[(usize, BigInt)],
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(row1.len() + row2.len());
    let (mut i, mut j) = (0, 0);
    while i < row1.len() || j < row2.len() {
        let take1 = j == row2.len() || (i < row1.len() && row1[i].0 < row2[j].0);
        let take2 = i == row1.len() || (j < row2.len() && row2[j].0 < row1[i].0);
        let (col, val) = if take1 {
            let e = (row1[i].0, a * &row1[i].1);
            i += 1;
            e
        } else if take2 {
            let e = (row2[j].0, -(b * &row2[j].1));
            j += 1;
            e
        } else {
            let e = (row1[i].0, a * &row1[i].1 - b * &row2[j].1);
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

fn reduce_content(row: &mut Vec<(usize, BigInt)>) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = num::integer::gcd(g, v.abs());
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

use num::{Integer, One, Signed, Zero};

use super::{Int, ZMat};

/// Result of a Smith normal form computation over the integers.
///
/// `diagonal` holds the positive diagonal entries in divisibility order (`d1 | d2 | ...`);
/// its length is the rank. `kernel_basis` is a basis of the full integer kernel lattice
/// (saturated, so rational and integer kernels have the same span).
pub struct Snf {
    pub diagonal: Vec<Int>,
    pub kernel_basis: Vec<Vec<Int>>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries greater than one; the torsion coefficients of the cokernel.
    pub fn torsion(&self) -> Vec<Int> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

/// Dense Smith normal form with column-transform tracking.
///
/// Works on desk-scale matrices; pivoting always selects the smallest-magnitude nonzero
/// entry of the trailing submatrix (first occurrence in row-major order), so the
/// computation is deterministic.
pub fn smith_normal_form(m: &ZMat) -> Snf {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut a = m.to_dense();
    // Column operations on `a` are mirrored on `v`, so that kernel(a_orig) = v * kernel(d).
    let mut v: Vec<Vec<Int>> = (0..nc)
        .map(|i| {
            (0..nc)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();

    let mut t = 0;
    while t < nr && t < nc {
        match find_pivot(&a, t) {
            None => break,
            Some((pi, pj)) => {
                a.swap(t, pi);
                swap_cols(&mut a, &mut v, t, pj);
            }
        }
        loop {
            // Clear column t below the pivot.
            for i in t + 1..nr {
                if !a[i][t].is_zero() {
                    let q = rounded_div(&a[i][t], &a[t][t]);
                    row_sub(&mut a, i, t, &q);
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..nc {
                if !a[t][j].is_zero() {
                    let q = rounded_div(&a[t][j], &a[t][t]);
                    col_sub(&mut a, &mut v, j, t, &q);
                }
            }
            let col_clear = (t + 1..nr).all(|i| a[i][t].is_zero());
            let row_clear = (t + 1..nc).all(|j| a[t][j].is_zero());
            if !(col_clear && row_clear) {
                // Remainders became the new smallest entries; re-pivot and repeat.
                if let Some((pi, pj)) = find_pivot(&a, t) {
                    a.swap(t, pi);
                    swap_cols(&mut a, &mut v, t, pj);
                }
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            match first_nondivisible(&a, t) {
                Some(i) => {
                    let one = Int::one();
                    row_add(&mut a, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }

    let diagonal: Vec<Int> = (0..t).map(|i| a[i][i].clone()).collect();
    debug_assert!(diagonal.iter().all(|d| d.is_positive()));
    let kernel_basis = (t..nc)
        .map(|j| (0..nc).map(|i| v[i][j].clone()).collect())
        .collect();
    Snf {
        diagonal,
        kernel_basis,
    }
}

/// Basis of the integer kernel lattice of `m`.
pub fn integer_kernel_basis(m: &ZMat) -> Vec<Vec<Int>> {
    smith_normal_form(m).kernel_basis
}

fn find_pivot(a: &[Vec<Int>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, val) in row.iter().enumerate().skip(t) {
            if val.is_zero() {
                continue;
            }
            match &best {
                Some((bi, bj)) if a[*bi][*bj].abs() <= val.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn first_nondivisible(a: &[Vec<Int>], t: usize) -> Option<usize> {
    let d = &a[t][t];
    a.iter()
        .enumerate()
        .skip(t + 1)
        .find(|(_, row)| row.iter().skip(t + 1).any(|x| !x.mod_floor(d).is_zero()))
        .map(|(i, _)| i)
}

/// Quotient rounded to nearest, so the remainder has magnitude at most |b|/2.
fn rounded_div(a: &Int, b: &Int) -> Int {
    let (mut q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// `row_i -= q * row_t`.
fn row_sub(a: &mut [Vec<Int>], i: usize, t: usize, q: &Int) {
    let src = a[t].clone();
    for (x, s) in a[i].iter_mut().zip(src) {
        *x -= q * s;
    }
}

/// `row_t += q * row_i`.
fn row_add(a: &mut [Vec<Int>], t: usize, i: usize, q: &Int) {
    let src = a[i].clone();
    for (x, s) in a[t].iter_mut().zip(src) {
        *x += q * s;
    }
}

/// `col_j -= q * col_t`, mirrored on the transform.
fn col_sub(a: &mut [Vec<Int>], v: &mut [Vec<Int>], j: usize, t: usize, q: &Int) {
    for row in a.iter_mut() {
        let s = row[t].clone();
        row[j] -= q * s;
    }
    for row in v.iter_mut() {
        let s = row[t].clone();
        row[j] -= q * s;
    }
}

fn swap_cols(a: &mut [Vec<Int>], v: &mut [Vec<Int>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in v.iter_mut() {
        row.swap(i, j);
    }
}

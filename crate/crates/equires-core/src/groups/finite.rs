use num::{One, Signed, Zero};

use crate::linalg::{rat, Int, Rat};

use super::error::GroupError;

/// A finite group presented by its multiplication table together with a rational
/// character table.
///
/// Table rows are rational irreducible characters; a row that packages a Galois orbit of
/// complex irreducibles (the rational pairing used e.g. for cyclic groups beyond order 2)
/// carries squared norm equal to the orbit size. Rows are verified orthogonal with
/// `<chi_i, chi_j> = s_i * delta_ij`, and a table whose rows all have norm one must be
/// complete (as many rows as conjugacy classes).
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroup {
    name: String,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    /// Rows by conjugacy class, matching `classes`.
    table: Vec<Vec<Rat>>,
    norms: Vec<Int>,
    row_names: Vec<String>,
}

impl FiniteGroup {
    /// Builds and fully verifies a finite group. `rows` give character values per
    /// *element*; they are checked constant on conjugacy classes and compressed.
    /// The first row must be the trivial character.
    pub fn new(
        name: impl Into<String>,
        mult: Vec<Vec<usize>>,
        rows: Vec<(String, Vec<Rat>)>,
    ) -> Result<Self, GroupError> {
        let name = name.into();
        let n = mult.len();
        let bad = |msg: String| Err(GroupError::InvalidGroup(format!("{name}: {msg}")));
        if n == 0 {
            return bad("empty multiplication table".into());
        }
        if mult.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("malformed multiplication table".into());
        }
        let identity = match (0..n).find(|&e| (0..n).all(|x| mult[e][x] == x && mult[x][e] == x))
        {
            Some(e) => e,
            None => return bad("no identity element".into()),
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return bad(format!("associativity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| mult[g][h] == identity && mult[h][g] == identity) {
                Some(h) => inv[g] = h,
                None => return bad(format!("element {g} has no inverse")),
            }
        }
        // Conjugacy classes, canonically ordered by minimal member.
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|h| mult[mult[h][g]][inv[h]]).collect();
            class.sort_unstable();
            class.dedup();
            let idx = classes.len();
            for &x in &class {
                class_of[x] = idx;
            }
            classes.push(class);
        }
        // Compress rows to classes, verifying constancy.
        if rows.is_empty() {
            return bad("character table has no rows".into());
        }
        let mut table = Vec::with_capacity(rows.len());
        let mut row_names = Vec::with_capacity(rows.len());
        for (rname, values) in &rows {
            if values.len() != n {
                return bad(format!("row {rname} has {} values, expected {n}", values.len()));
            }
            let mut per_class = Vec::with_capacity(classes.len());
            for class in &classes {
                let v = values[class[0]].clone();
                if class.iter().any(|&g| values[g] != v) {
                    return bad(format!("row {rname} is not constant on a conjugacy class"));
                }
                per_class.push(v);
            }
            table.push(per_class);
            row_names.push(rname.clone());
        }
        if table[0].iter().any(|v| *v != rat(1)) {
            return bad("first row must be the trivial character".into());
        }
        // Orthogonality with integral norms; dims are positive integers.
        let mut norms = Vec::with_capacity(table.len());
        for (i, row_i) in table.iter().enumerate() {
            let dim = &row_i[class_of[identity]];
            if !dim.is_integer() || !dim.is_positive() {
                return bad(format!("row {} has non-positive-integer dimension", row_names[i]));
            }
            for (j, row_j) in table.iter().enumerate() {
                let mut acc = Rat::zero();
                for (c, class) in classes.iter().enumerate() {
                    acc += rat(class.len() as i64) * &row_i[c] * &row_j[c];
                }
                acc /= rat(n as i64);
                if i == j {
                    if !acc.is_integer() || !acc.is_positive() {
                        return bad(format!(
                            "row {} has non-integral squared norm {acc}",
                            row_names[i]
                        ));
                    }
                    norms.push(acc.to_integer());
                } else if !acc.is_zero() {
                    return bad(format!(
                        "rows {} and {} are not orthogonal",
                        row_names[i], row_names[j]
                    ));
                }
            }
        }
        if norms.iter().all(|s| s.is_one()) && table.len() != classes.len() {
            return bad(format!(
                "norm-one table must be complete: {} rows for {} classes",
                table.len(),
                classes.len()
            ));
        }
        if table.len() > classes.len() {
            return bad("more rows than conjugacy classes".into());
        }
        Ok(FiniteGroup {
            name,
            mult,
            inv,
            identity,
            classes,
            class_of,
            table,
            norms,
            row_names,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn num_rows(&self) -> usize {
        self.table.len()
    }

    pub fn row_name(&self, r: usize) -> &str {
        &self.row_names[r]
    }

    pub fn row_by_name(&self, name: &str) -> Option<usize> {
        self.row_names.iter().position(|n| n == name)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Character value of a row at an element.
    pub fn value(&self, row: usize, g: usize) -> Rat {
        self.table[row][self.class_of[g]].clone()
    }

    pub fn dim(&self, row: usize) -> Int {
        self.table[row][self.class_of[self.identity]].to_integer()
    }

    pub fn norm(&self, row: usize) -> Int {
        self.norms[row].clone()
    }

    /// True when every row is one-dimensional with norm one and the table is square; the
    /// shape required of finite normal parts of extensions.
    pub fn all_rows_one_dimensional(&self) -> bool {
        self.table.len() == self.order()
            && (0..self.table.len()).all(|r| self.dim(r).is_one() && self.norms[r].is_one())
    }

    /// Decomposes a per-element class function into table rows; errors if the
    /// coefficients are non-integral or a nonzero residual remains.
    pub fn decompose(&self, values: &[Rat]) -> Result<Vec<(usize, Int)>, GroupError> {
        if values.len() != self.order() {
            return Err(GroupError::InvalidGroup(format!(
                "{}: class function has wrong length",
                self.name
            )));
        }
        let n = rat(self.order() as i64);
        let mut out = Vec::new();
        let mut residual = values.to_vec();
        for r in 0..self.table.len() {
            let mut acc = Rat::zero();
            for g in 0..self.order() {
                acc += &values[g] * self.value(r, g);
            }
            let coeff = acc / (&n * Rat::from_integer(self.norms[r].clone()));
            if coeff.is_zero() {
                continue;
            }
            if !coeff.is_integer() {
                return Err(GroupError::NonIntegralDecomposition(format!(
                    "{}: coefficient {coeff} at row {}",
                    self.name, self.row_names[r]
                )));
            }
            for g in 0..self.order() {
                residual[g] -= &coeff * self.value(r, g);
            }
            out.push((r, coeff.to_integer()));
        }
        if residual.iter().any(|v| !v.is_zero()) {
            return Err(GroupError::NonIntegralDecomposition(format!(
                "{}: class function is not in the span of the table rows",
                self.name
            )));
        }
        Ok(out)
    }
}

/// All positive divisors of `n`, ascending.
fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

/// Moebius function.
fn mobius(mut n: u64) -> i64 {
    let mut factors = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            factors += 1;
        }
        p += 1;
    }
    if n > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Ramanujan sum c_d(k): the sum of k-th powers of the primitive d-th roots of unity.
fn ramanujan(d: u64, k: u64) -> i64 {
    let g = num::integer::gcd(d, k % d.max(1));
    divisors(if d == 0 { 1 } else { g })
        .into_iter()
        .map(|m| m as i64 * mobius(d / m))
        .sum()
}

/// The one-element group.
pub fn trivial_group() -> FiniteGroup {
    FiniteGroup::new("trivial", vec![vec![0]], vec![("triv".into(), vec![rat(1)])])
        .expect("trivial group is valid")
}

/// Cyclic group of order `n` with its rational character table: one row per divisor `d`
/// of `n`, with values the Ramanujan sums c_d(k) (the paired Galois orbit of the
/// primitive order-d characters, squared norm phi(d)).
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs positive order");
    let mult = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let rows = divisors(n as u64)
        .into_iter()
        .map(|d| {
            let name = match d {
                1 => "triv".to_string(),
                2 => "sgn".to_string(),
                _ => format!("chi{d}"),
            };
            let values = (0..n).map(|k| rat(ramanujan(d, k as u64))).collect();
            (name, values)
        })
        .collect();
    FiniteGroup::new(format!("cyclic:{n}"), mult, rows).expect("cyclic table is valid")
}

/// Dihedral group of order 2n with its rational character table.
///
/// Elements 0..n are the rotations r^k, elements n..2n the reflections s r^k. Rows: the
/// trivial and rotation-sign characters, the two B characters when n is even, and one
/// paired row per divisor d >= 3 of n with rotation values c_d(k) (squared norm phi(d)/2).
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1, "dihedral group needs positive rotation order");
    let idx = |refl: usize, k: usize| refl * n + k;
    let mut mult = vec![vec![0usize; 2 * n]; 2 * n];
    for a in 0..n {
        for b in 0..n {
            mult[idx(0, a)][idx(0, b)] = idx(0, (a + b) % n);
            mult[idx(0, a)][idx(1, b)] = idx(1, (b + n - a) % n);
            mult[idx(1, a)][idx(0, b)] = idx(1, (a + b) % n);
            mult[idx(1, a)][idx(1, b)] = idx(0, (b + n - a) % n);
        }
    }
    let mut rows = vec![
        (
            "triv".to_string(),
            vec![rat(1); 2 * n],
        ),
        (
            "sgn".to_string(),
            (0..2 * n).map(|g| if g < n { rat(1) } else { rat(-1) }).collect(),
        ),
    ];
    if n % 2 == 0 {
        let b1 = (0..2 * n)
            .map(|g| rat(if (g % n) % 2 == 0 { 1 } else { -1 }))
            .collect();
        let b2 = (0..2 * n)
            .map(|g| {
                let sign = if (g % n) % 2 == 0 { 1 } else { -1 };
                rat(if g < n { sign } else { -sign })
            })
            .collect();
        rows.push(("B1".to_string(), b1));
        rows.push(("B2".to_string(), b2));
    }
    for d in divisors(n as u64).into_iter().filter(|&d| d >= 3) {
        let values = (0..2 * n)
            .map(|g| {
                if g < n {
                    rat(ramanujan(d, g as u64))
                } else {
                    rat(0)
                }
            })
            .collect();
        rows.push((format!("E{d}"), values));
    }
    FiniteGroup::new(format!("dihedral:{n}"), mult, rows).expect("dihedral table is valid")
}

/// All permutations of `0..n` in lexicographic one-line order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut type_ = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        type_.push(len);
    }
    type_.sort_unstable_by(|a, b| b.cmp(a));
    type_
}

fn perm_sign(perm: &[usize]) -> i64 {
    let transpositions: usize = cycle_type(perm).iter().map(|c| c - 1).sum();
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Symmetric group on `n <= 4` letters (these have rational irreducible tables).
/// Elements are the permutations of 0..n in lexicographic order; composition is
/// `(a*b)(x) = a(b(x))`.
pub fn symmetric(n: usize) -> FiniteGroup {
    assert!((1..=4).contains(&n), "rational symmetric tables cover n <= 4");
    let perms = permutations(n);
    let index_of = |p: &Vec<usize>| perms.binary_search(p).expect("permutation listed");
    let mult = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let composed: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                    index_of(&composed)
                })
                .collect()
        })
        .collect();
    let by_type = |f: &dyn Fn(&[usize]) -> i64| -> Vec<Rat> {
        perms.iter().map(|p| rat(f(p))).collect()
    };
    let mut rows = vec![("triv".to_string(), vec![rat(1); perms.len()])];
    if n >= 2 {
        rows.push(("sgn".to_string(), by_type(&|p| perm_sign(p))));
    }
    if n == 3 {
        rows.push((
            "std".to_string(),
            by_type(&|p| match cycle_type(p).as_slice() {
                [1, 1, 1] => 2,
                [2, 1] => 0,
                [3] => -1,
                _ => unreachable!(),
            }),
        ));
    }
    if n == 4 {
        rows.push((
            "plane".to_string(),
            by_type(&|p| match cycle_type(p).as_slice() {
                [1, 1, 1, 1] => 2,
                [2, 1, 1] => 0,
                [2, 2] => 2,
                [3, 1] => -1,
                [4] => 0,
                _ => unreachable!(),
            }),
        ));
        rows.push((
            "std".to_string(),
            by_type(&|p| match cycle_type(p).as_slice() {
                [1, 1, 1, 1] => 3,
                [2, 1, 1] => 1,
                [2, 2] => -1,
                [3, 1] => 0,
                [4] => -1,
                _ => unreachable!(),
            }),
        ));
        rows.push((
            "std_sgn".to_string(),
            by_type(&|p| match cycle_type(p).as_slice() {
                [1, 1, 1, 1] => 3,
                [2, 1, 1] => -1,
                [2, 2] => -1,
                [3, 1] => 0,
                [4] => 1,
                _ => unreachable!(),
            }),
        ));
    }
    FiniteGroup::new(format!("symmetric:{n}"), mult, rows).expect("symmetric table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tables_verify_and_have_expected_shapes() {
        for (fg, rows, order) in [
            (trivial_group(), 1, 1),
            (cyclic(2), 2, 2),
            (cyclic(3), 2, 3),
            (cyclic(6), 4, 6),
            (dihedral(1), 2, 2),
            (dihedral(2), 4, 4),
            (dihedral(3), 3, 6),
            (dihedral(4), 5, 8),
            (dihedral(5), 3, 10),
            (dihedral(6), 6, 12),
            (symmetric(3), 3, 6),
            (symmetric(4), 5, 24),
        ] {
            assert_eq!(fg.num_rows(), rows, "{}", fg.name());
            assert_eq!(fg.order(), order, "{}", fg.name());
        }
    }

    #[test]
    fn cyclic_three_pairs_conjugate_characters() {
        let c3 = cyclic(3);
        assert_eq!(c3.num_rows(), 2);
        let paired = c3.row_by_name("chi3").unwrap();
        assert_eq!(c3.dim(paired), Int::from(2));
        assert_eq!(c3.norm(paired), Int::from(2));
        assert_eq!(c3.value(paired, 1), rat(-1));
    }

    #[test]
    fn symmetric_four_class_sizes() {
        let s4 = symmetric(4);
        let mut sizes: Vec<usize> = s4.classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn broken_table_is_rejected() {
        // Non-orthogonal second row.
        let err = FiniteGroup::new(
            "bad",
            vec![vec![0, 1], vec![1, 0]],
            vec![
                ("triv".into(), vec![rat(1), rat(1)]),
                ("also_triv".into(), vec![rat(1), rat(1)]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, GroupError::InvalidGroup(_)));
    }

    #[test]
    fn decompose_recovers_regular_representation() {
        // The regular representation of S3 contains each irreducible dim times.
        let s3 = symmetric(3);
        let mut values = vec![rat(0); 6];
        values[s3.identity()] = rat(6);
        let dec = s3.decompose(&values).unwrap();
        let by_name: Vec<(String, Int)> = dec
            .iter()
            .map(|(r, c)| (s3.row_name(*r).to_string(), c.clone()))
            .collect();
        assert_eq!(
            by_name,
            vec![
                ("triv".to_string(), Int::from(1)),
                ("sgn".to_string(), Int::from(1)),
                ("std".to_string(), Int::from(2)),
            ]
        );
    }

    #[test]
    fn decompose_rejects_non_virtual_class_function() {
        let c2 = cyclic(2);
        // (1, 0) has coefficient 1/2 on each row.
        let err = c2.decompose(&[rat(1), rat(0)]).unwrap_err();
        assert!(matches!(err, GroupError::NonIntegralDecomposition(_)));
    }
}

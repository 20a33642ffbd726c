use std::fmt;

use crate::linalg::{QMat, Rat};

use super::error::GroupError;

/// Label of a rational irreducible representation.
///
/// The `Ord` instance is the canonical ordering used everywhere labels are enumerated, so
/// window enumerations and fiber coordinates are deterministic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IrredLabel {
    /// Row index into a finite group's rational character table.
    Finite(usize),
    /// Weight vector of a torus.
    Weight(Vec<i64>),
    /// Componentwise labels of a product group.
    Tuple(Vec<IrredLabel>),
    /// Extension label: a quotient-fixed normal label paired with a quotient table row.
    Fixed(Box<IrredLabel>, usize),
    /// Extension label: a free quotient-orbit of normal labels (sorted members).
    Orbit(Vec<IrredLabel>),
}

impl fmt::Display for IrredLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrredLabel::Finite(r) => write!(f, "#{r}"),
            IrredLabel::Weight(w) => {
                let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "w({})", parts.join(","))
            }
            IrredLabel::Tuple(ls) => {
                let parts: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            IrredLabel::Fixed(l, psi) => write!(f, "fix[{l};#{psi}]"),
            IrredLabel::Orbit(ls) => {
                let parts: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
                write!(f, "orb[{}]", parts.join(","))
            }
        }
    }
}

/// Action of a single group element (or monodromy generator) on irreducible labels.
#[derive(Clone, Debug, PartialEq)]
pub enum LabelAction {
    Identity,
    /// Unimodular integer matrix acting on torus weights, `m -> U m`.
    WeightLinear(Vec<Vec<i64>>),
    /// Permutation of a finite group's table rows, `row -> perm[row]`.
    RowPerm(Vec<usize>),
    /// Componentwise action on a product's tuple labels.
    Product(Vec<LabelAction>),
}

impl LabelAction {
    pub fn apply(&self, label: &IrredLabel) -> Result<IrredLabel, GroupError> {
        match (self, label) {
            (LabelAction::Identity, l) => Ok(l.clone()),
            (LabelAction::WeightLinear(u), IrredLabel::Weight(m)) => {
                if u.len() != m.len() || u.iter().any(|row| row.len() != m.len()) {
                    return Err(GroupError::InvalidAction(
                        "weight action dimension mismatch".into(),
                    ));
                }
                let out = u
                    .iter()
                    .map(|row| row.iter().zip(m).map(|(a, b)| a * b).sum())
                    .collect();
                Ok(IrredLabel::Weight(out))
            }
            (LabelAction::RowPerm(p), IrredLabel::Finite(r)) => {
                p.get(*r).copied().map(IrredLabel::Finite).ok_or_else(|| {
                    GroupError::InvalidAction(format!("row permutation misses row {r}"))
                })
            }
            (LabelAction::Product(actions), IrredLabel::Tuple(ls)) => {
                if actions.len() != ls.len() {
                    return Err(GroupError::InvalidAction(
                        "product action arity mismatch".into(),
                    ));
                }
                let out: Result<Vec<_>, _> =
                    actions.iter().zip(ls).map(|(a, l)| a.apply(l)).collect();
                Ok(IrredLabel::Tuple(out?))
            }
            _ => Err(GroupError::InvalidAction(format!(
                "action {self:?} does not match label {label}"
            ))),
        }
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LabelAction) -> Result<LabelAction, GroupError> {
        match (self, other) {
            (LabelAction::Identity, x) | (x, LabelAction::Identity) => Ok(x.clone()),
            (LabelAction::WeightLinear(a), LabelAction::WeightLinear(b)) => {
                let n = a.len();
                if b.len() != n || a.iter().chain(b.iter()).any(|r| r.len() != n) {
                    return Err(GroupError::InvalidAction(
                        "weight action dimension mismatch".into(),
                    ));
                }
                let prod = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                            .collect()
                    })
                    .collect();
                Ok(LabelAction::WeightLinear(prod))
            }
            (LabelAction::RowPerm(a), LabelAction::RowPerm(b)) => {
                if a.len() != b.len() {
                    return Err(GroupError::InvalidAction("permutation size mismatch".into()));
                }
                Ok(LabelAction::RowPerm(b.iter().map(|&x| a[x]).collect()))
            }
            (LabelAction::Product(a), LabelAction::Product(b)) => {
                if a.len() != b.len() {
                    return Err(GroupError::InvalidAction(
                        "product action arity mismatch".into(),
                    ));
                }
                let out: Result<Vec<_>, _> =
                    a.iter().zip(b).map(|(x, y)| x.compose(y)).collect();
                Ok(LabelAction::Product(out?))
            }
            _ => Err(GroupError::InvalidAction(
                "cannot compose actions of different shapes".into(),
            )),
        }
    }

    pub fn inverse(&self) -> Result<LabelAction, GroupError> {
        match self {
            LabelAction::Identity => Ok(LabelAction::Identity),
            LabelAction::WeightLinear(u) => {
                let inv = invert_unimodular(u).ok_or_else(|| {
                    GroupError::InvalidAction("weight action is not unimodular".into())
                })?;
                Ok(LabelAction::WeightLinear(inv))
            }
            LabelAction::RowPerm(p) => {
                let mut inv = vec![usize::MAX; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    if x >= p.len() || inv[x] != usize::MAX {
                        return Err(GroupError::InvalidAction(
                            "row map is not a permutation".into(),
                        ));
                    }
                    inv[x] = i;
                }
                Ok(LabelAction::RowPerm(inv))
            }
            LabelAction::Product(a) => {
                let out: Result<Vec<_>, _> = a.iter().map(|x| x.inverse()).collect();
                Ok(LabelAction::Product(out?))
            }
        }
    }
}

/// Inverse of an integer matrix with determinant ±1, if it is one.
fn invert_unimodular(u: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = u.len();
    if u.iter().any(|r| r.len() != n) {
        return None;
    }
    // Gauss-Jordan over the rationals, then check integrality.
    let mut a: Vec<Vec<Rat>> = u
        .iter()
        .map(|row| row.iter().map(|&x| crate::linalg::rat(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| crate::linalg::rat((i == j) as i64))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !num::Zero::is_zero(&a[r][col]))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pv = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &pv;
            inv[col][j] = &inv[col][j] / &pv;
        }
        for r in 0..n {
            if r == col || num::Zero::is_zero(&a[r][col]) {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (av, iv) = (a[col][j].clone(), inv[col][j].clone());
                a[r][j] = &a[r][j] - &(&f * &av);
                inv[r][j] = &inv[r][j] - &(&f * &iv);
            }
        }
    }
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if !inv[i][j].is_integer() {
                return None;
            }
            out[i][j] = i64::try_from(inv[i][j].to_integer()).ok()?;
        }
    }
    Some(out)
}

/// A group element's simultaneous action on irreducible labels and on Lie-algebra
/// coordinates; the shared currency between extension descriptions and monodromy data.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAction {
    pub on_labels: LabelAction,
    pub on_lie: QMat,
}

impl GroupAction {
    pub fn identity(lie_dim: usize) -> Self {
        GroupAction {
            on_labels: LabelAction::Identity,
            on_lie: QMat::identity(lie_dim),
        }
    }

    pub fn compose(&self, other: &GroupAction) -> Result<GroupAction, GroupError> {
        Ok(GroupAction {
            on_labels: self.on_labels.compose(&other.on_labels)?,
            on_lie: self.on_lie.mul(&other.on_lie),
        })
    }

    pub fn is_identity(&self) -> bool {
        let id = QMat::identity(self.on_lie.nrows());
        matches!(self.on_labels, LabelAction::Identity) && self.on_lie == id
    }
}

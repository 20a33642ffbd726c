use num::One;

use crate::linalg::{rat, Int, QMat};

use super::error::GroupError;
use super::finite::{cyclic, trivial_group, FiniteGroup};
use super::label::{GroupAction, IrredLabel, LabelAction};

/// Description of a compact group, restricted to the shapes the calculators support:
/// finite groups with rational character tables, tori, finite products, and split
/// extensions of a finite group by a torus or finite abelian normal part.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupDesc {
    Finite(FiniteGroup),
    Torus(usize),
    Product(Vec<GroupDesc>),
    Extension(Box<ExtensionDesc>),
}

/// A split extension `N ⋊ F`: finite quotient `F` acting on the normal part's
/// irreducible labels and on its Lie-algebra coordinates, one [`GroupAction`] per
/// quotient element.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionDesc {
    name: String,
    normal: GroupDesc,
    quotient: FiniteGroup,
    actions: Vec<GroupAction>,
}

impl ExtensionDesc {
    /// Builds and verifies an extension description.
    ///
    /// Checks: the normal part is a torus or a finite group with one-dimensional rational
    /// rows; exactly one action per quotient element, forming a homomorphism; the lie
    /// action of each element is the transpose of its weight action (tori), so label and
    /// polynomial transports stay consistent; the trivial label is fixed.
    pub fn new(
        name: impl Into<String>,
        normal: GroupDesc,
        quotient: FiniteGroup,
        actions: Vec<GroupAction>,
    ) -> Result<Self, GroupError> {
        let name = name.into();
        let bad = |msg: String| Err(GroupError::InvalidGroup(format!("extension {name}: {msg}")));
        let torus_rank = match &normal {
            GroupDesc::Torus(n) => Some(*n),
            GroupDesc::Finite(fg) => {
                if !fg.all_rows_one_dimensional() {
                    return bad(
                        "finite normal part must have a square table of one-dimensional rows"
                            .into(),
                    );
                }
                None
            }
            _ => {
                return bad("normal part must be a torus or a finite group".into());
            }
        };
        if actions.len() != quotient.order() {
            return bad(format!(
                "{} actions for a quotient of order {}",
                actions.len(),
                quotient.order()
            ));
        }
        let lie_dim = torus_rank.unwrap_or(0);
        let normalized: Vec<GroupAction> = actions
            .iter()
            .map(|a| normalize_action(a, &normal))
            .collect::<Result<_, _>>()?;
        for (f, a) in normalized.iter().enumerate() {
            if a.on_lie.nrows() != lie_dim || a.on_lie.ncols() != lie_dim {
                return bad(format!("action {f} has wrong Lie dimension"));
            }
            // Tori: the weight action determines the Lie action as its transpose; this is
            // exactly what makes localization commute with transports.
            if let (Some(n), LabelAction::WeightLinear(u)) = (torus_rank, &a.on_labels) {
                for i in 0..n {
                    for j in 0..n {
                        if a.on_lie.get(i, j) != rat(u[j][i]) {
                            return bad(format!(
                                "action {f}: Lie matrix is not the transpose of the weight matrix"
                            ));
                        }
                    }
                }
            }
            a.on_labels.inverse()?;
            let triv = trivial_label_of(&normal);
            if a.on_labels.apply(&triv)? != triv {
                return bad(format!("action {f} moves the trivial label"));
            }
        }
        let identity_action = normalize_action(&GroupAction::identity(lie_dim), &normal)?;
        if normalized[quotient.identity()] != identity_action {
            return bad("identity element must act trivially".into());
        }
        for a in 0..quotient.order() {
            for b in 0..quotient.order() {
                let ab = quotient.mul(a, b);
                let composed = normalized[a].compose(&normalized[b])?;
                if composed != normalized[ab] {
                    return bad(format!("actions violate the multiplication table at ({a},{b})"));
                }
            }
        }
        Ok(ExtensionDesc {
            name,
            normal,
            quotient,
            actions: normalized,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn normal(&self) -> &GroupDesc {
        &self.normal
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn action(&self, f: usize) -> &GroupAction {
        &self.actions[f]
    }

    pub fn actions(&self) -> &[GroupAction] {
        &self.actions
    }
}

/// Replaces `Identity` placeholders by the concrete identity action of the normal part's
/// shape, so actions can be compared and composed structurally.
fn normalize_action(a: &GroupAction, normal: &GroupDesc) -> Result<GroupAction, GroupError> {
    let on_labels = match (&a.on_labels, normal) {
        (LabelAction::Identity, GroupDesc::Torus(n)) => {
            let id: Vec<Vec<i64>> = (0..*n)
                .map(|i| (0..*n).map(|j| (i == j) as i64).collect())
                .collect();
            LabelAction::WeightLinear(id)
        }
        (LabelAction::Identity, GroupDesc::Finite(fg)) => {
            LabelAction::RowPerm((0..fg.num_rows()).collect())
        }
        (other, _) => other.clone(),
    };
    Ok(GroupAction {
        on_labels,
        on_lie: a.on_lie.clone(),
    })
}

fn trivial_label_of(g: &GroupDesc) -> IrredLabel {
    match g {
        GroupDesc::Finite(_) => IrredLabel::Finite(0),
        GroupDesc::Torus(n) => IrredLabel::Weight(vec![0; *n]),
        GroupDesc::Product(gs) => IrredLabel::Tuple(gs.iter().map(trivial_label_of).collect()),
        GroupDesc::Extension(e) => {
            IrredLabel::Fixed(Box::new(trivial_label_of(e.normal())), 0)
        }
    }
}

impl GroupDesc {
    pub fn trivial() -> Self {
        GroupDesc::Finite(trivial_group())
    }

    pub fn circle() -> Self {
        GroupDesc::Torus(1)
    }

    /// The rotation-and-reflection group of the circle: `S¹ ⋊ ℤ₂` with the reflection
    /// negating weights and the Lie coordinate.
    pub fn circle_semidirect_z2() -> Self {
        let flip = GroupAction {
            on_labels: LabelAction::WeightLinear(vec![vec![-1]]),
            on_lie: QMat::from_dense(vec![vec![rat(-1)]]),
        };
        let ext = ExtensionDesc::new(
            "S1:Z2",
            GroupDesc::Torus(1),
            cyclic(2),
            vec![GroupAction::identity(1), flip],
        )
        .expect("circle semidirect extension is valid");
        GroupDesc::Extension(Box::new(ext))
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, GroupDesc::Finite(fg) if fg.order() == 1)
    }

    /// Dimension of the Lie algebra (total torus rank).
    pub fn lie_dim(&self) -> usize {
        match self {
            GroupDesc::Finite(_) => 0,
            GroupDesc::Torus(n) => *n,
            GroupDesc::Product(gs) => gs.iter().map(|g| g.lie_dim()).sum(),
            GroupDesc::Extension(e) => e.normal().lie_dim(),
        }
    }

    pub fn trivial_label(&self) -> IrredLabel {
        trivial_label_of(self)
    }

    /// Dimension of the representation a label names.
    pub fn label_dim(&self, label: &IrredLabel) -> Result<Int, GroupError> {
        let mismatch = || {
            GroupError::InvalidGroup(format!(
                "label {label} does not belong to group {}",
                self.display_name()
            ))
        };
        match (self, label) {
            (GroupDesc::Finite(fg), IrredLabel::Finite(r)) => {
                if *r < fg.num_rows() {
                    Ok(fg.dim(*r))
                } else {
                    Err(mismatch())
                }
            }
            (GroupDesc::Torus(n), IrredLabel::Weight(m)) => {
                if m.len() == *n {
                    Ok(Int::one())
                } else {
                    Err(mismatch())
                }
            }
            (GroupDesc::Product(gs), IrredLabel::Tuple(ls)) => {
                if gs.len() != ls.len() {
                    return Err(mismatch());
                }
                let mut dim = Int::one();
                for (g, l) in gs.iter().zip(ls) {
                    dim *= g.label_dim(l)?;
                }
                Ok(dim)
            }
            (GroupDesc::Extension(e), IrredLabel::Fixed(l, psi)) => {
                let ndim = e.normal().label_dim(l)?;
                if !ndim.is_one() {
                    return Err(mismatch());
                }
                if *psi < e.quotient().num_rows() {
                    Ok(e.quotient().dim(*psi))
                } else {
                    Err(mismatch())
                }
            }
            (GroupDesc::Extension(e), IrredLabel::Orbit(ms)) => {
                let mut dim = Int::from(0);
                for m in ms {
                    dim += e.normal().label_dim(m)?;
                }
                Ok(dim)
            }
            _ => Err(mismatch()),
        }
    }

    pub fn display_name(&self) -> String {
        match self {
            GroupDesc::Finite(fg) => fg.name().to_string(),
            GroupDesc::Torus(n) => format!("T^{n}"),
            GroupDesc::Product(gs) => {
                let parts: Vec<String> = gs.iter().map(|g| g.display_name()).collect();
                parts.join(" x ")
            }
            GroupDesc::Extension(e) => e.name().to_string(),
        }
    }

    /// Structural equality ignoring names: same multiplication and character data.
    pub fn same_group(&self, other: &GroupDesc) -> bool {
        match (self, other) {
            (GroupDesc::Finite(a), GroupDesc::Finite(b)) => same_finite(a, b),
            (GroupDesc::Torus(m), GroupDesc::Torus(n)) => m == n,
            (GroupDesc::Product(xs), GroupDesc::Product(ys)) => {
                xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.same_group(y))
            }
            (GroupDesc::Extension(x), GroupDesc::Extension(y)) => {
                x.normal().same_group(y.normal())
                    && same_finite(x.quotient(), y.quotient())
                    && x.actions() == y.actions()
            }
            _ => false,
        }
    }
}

fn same_finite(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a.order() == b.order()
        && a.identity() == b.identity()
        && a.num_rows() == b.num_rows()
        && (0..a.order()).all(|x| (0..a.order()).all(|y| a.mul(x, y) == b.mul(x, y)))
        && (0..a.num_rows()).all(|r| (0..a.order()).all(|g| a.value(r, g) == b.value(r, g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_semidirect_z2_is_valid() {
        let g = GroupDesc::circle_semidirect_z2();
        assert_eq!(g.lie_dim(), 1);
        if let GroupDesc::Extension(e) = &g {
            assert_eq!(e.quotient().order(), 2);
        } else {
            panic!("expected extension");
        }
    }

    #[test]
    fn mismatched_lie_and_weight_actions_are_rejected() {
        // Weight negation but identity Lie matrix: inconsistent transports.
        let broken = GroupAction {
            on_labels: LabelAction::WeightLinear(vec![vec![-1]]),
            on_lie: QMat::identity(1),
        };
        let err = ExtensionDesc::new(
            "bad",
            GroupDesc::Torus(1),
            cyclic(2),
            vec![GroupAction::identity(1), broken],
        )
        .unwrap_err();
        assert!(matches!(err, GroupError::InvalidGroup(_)));
    }

    #[test]
    fn non_involutive_action_violates_table() {
        // Order-2 quotient acting by a shear of infinite order.
        let shear = GroupAction {
            on_labels: LabelAction::WeightLinear(vec![vec![1, 1], vec![0, 1]]),
            on_lie: QMat::from_dense(vec![
                vec![rat(1), rat(0)],
                vec![rat(1), rat(1)],
            ]),
        };
        let err = ExtensionDesc::new(
            "bad",
            GroupDesc::Torus(2),
            cyclic(2),
            vec![GroupAction::identity(2), shear],
        )
        .unwrap_err();
        assert!(matches!(err, GroupError::InvalidGroup(_)));
    }

    #[test]
    fn label_dims() {
        let g = GroupDesc::Product(vec![
            GroupDesc::Torus(1),
            GroupDesc::Finite(crate::groups::finite::symmetric(3)),
        ]);
        let label = IrredLabel::Tuple(vec![
            IrredLabel::Weight(vec![2]),
            IrredLabel::Finite(2), // std, dim 2
        ]);
        assert_eq!(g.label_dim(&label).unwrap(), Int::from(2));
    }
}

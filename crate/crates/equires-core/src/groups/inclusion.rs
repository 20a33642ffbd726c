//! Subgroup inclusions and restriction of representations along them.

use num::One;

use crate::linalg::{rat, Int, QMat, Rat, ZMat};

use super::desc::GroupDesc;
use super::error::GroupError;
use super::label::IrredLabel;
use super::rep::{irreducibles, restrict_to_normal, RepRingElem};

/// Data determining how the small group sits inside the big one.
#[derive(Clone, Debug, PartialEq)]
pub enum InclusionData {
    /// The small group is trivial.
    Trivial,
    /// The small group is the big group.
    Identity,
    /// Finite in finite: `map[s]` is the image of small element `s`.
    FiniteMap(Vec<usize>),
    /// Torus in torus: integer matrix with one row per big coordinate and one column per
    /// small coordinate, the Lie-algebra inclusion. Weights restrict by transposition.
    WeightRestriction(Vec<Vec<i64>>),
    /// Inclusion into the factor `index` of a product.
    Factor {
        index: usize,
        inner: Box<InclusionData>,
    },
    /// Product in product, componentwise.
    Componentwise(Vec<InclusionData>),
    /// The normal part of an extension.
    ExtensionNormal,
}

#[derive(Clone, Debug)]
pub struct SubgroupInclusion {
    big: GroupDesc,
    small: GroupDesc,
    data: InclusionData,
}

impl SubgroupInclusion {
    pub fn new(
        big: GroupDesc,
        small: GroupDesc,
        data: InclusionData,
    ) -> Result<Self, GroupError> {
        verify(&big, &small, &data)?;
        Ok(SubgroupInclusion { big, small, data })
    }

    pub fn big(&self) -> &GroupDesc {
        &self.big
    }

    pub fn small(&self) -> &GroupDesc {
        &self.small
    }

    pub fn data(&self) -> &InclusionData {
        &self.data
    }

    /// Restriction of a representation-ring element of the big group.
    pub fn rep_restrict(&self, e: &RepRingElem) -> Result<RepRingElem, GroupError> {
        let mut out = RepRingElem::zero();
        for (l, c) in e.iter() {
            let r = restrict_label(&self.data, &self.big, &self.small, l)?;
            out = out.add(&r.scale(c));
        }
        Ok(out)
    }

    /// Matrix of the Lie-algebra inclusion: big coordinates in rows, small in columns.
    pub fn lie_matrix(&self) -> QMat {
        lie_matrix_of(&self.data, &self.big, &self.small)
    }

    /// Integer matrix of `rep_restrict` between windowed label bases: one column per big
    /// label, one row per small label, both in canonical order. Errors if a restriction
    /// leaves the small window.
    pub fn label_matrix(&self, window: usize) -> Result<ZMat, GroupError> {
        let big_labels = irreducibles(&self.big, window)?;
        let small_labels = irreducibles(&self.small, window)?;
        let index_of = |l: &IrredLabel| -> Result<usize, GroupError> {
            small_labels
                .iter()
                .position(|(m, _)| m == l)
                .ok_or_else(|| {
                    GroupError::OutsideWindow(format!(
                        "restricted label {l} is outside window {window} of {}",
                        self.small.display_name()
                    ))
                })
        };
        let mut m = ZMat::zero(small_labels.len(), big_labels.len());
        for (col, (l, _)) in big_labels.iter().enumerate() {
            let r = restrict_label(&self.data, &self.big, &self.small, l)?;
            for (sl, c) in r.iter() {
                m.add_entry(index_of(sl)?, col, c.clone());
            }
        }
        Ok(m)
    }
}

fn bad(msg: String) -> GroupError {
    GroupError::InvalidInclusion(msg)
}

fn verify(big: &GroupDesc, small: &GroupDesc, data: &InclusionData) -> Result<(), GroupError> {
    match data {
        InclusionData::Trivial => {
            if !small.is_trivial() {
                return Err(bad("trivial inclusion requires the trivial group".into()));
            }
        }
        InclusionData::Identity => {
            if !big.same_group(small) {
                return Err(bad("identity inclusion requires equal groups".into()));
            }
        }
        InclusionData::FiniteMap(map) => {
            let (bf, sf) = match (big, small) {
                (GroupDesc::Finite(bf), GroupDesc::Finite(sf)) => (bf, sf),
                _ => return Err(bad("element map requires finite groups".into())),
            };
            if map.len() != sf.order() {
                return Err(bad(format!(
                    "element map has {} entries for a group of order {}",
                    map.len(),
                    sf.order()
                )));
            }
            if map.iter().any(|&g| g >= bf.order()) {
                return Err(bad("element map image out of range".into()));
            }
            let mut seen = vec![false; bf.order()];
            for &g in map {
                if seen[g] {
                    return Err(bad("element map is not injective".into()));
                }
                seen[g] = true;
            }
            if map[sf.identity()] != bf.identity() {
                return Err(bad("element map must send identity to identity".into()));
            }
            for a in 0..sf.order() {
                for b in 0..sf.order() {
                    if map[sf.mul(a, b)] != bf.mul(map[a], map[b]) {
                        return Err(bad(format!(
                            "element map is not a homomorphism at ({a}, {b})"
                        )));
                    }
                }
            }
        }
        InclusionData::WeightRestriction(m) => {
            let (nb, ns) = match (big, small) {
                (GroupDesc::Torus(nb), GroupDesc::Torus(ns)) => (*nb, *ns),
                _ => return Err(bad("weight restriction requires torus groups".into())),
            };
            if m.len() != nb || m.iter().any(|row| row.len() != ns) {
                return Err(bad(format!(
                    "weight-restriction matrix must be {nb} x {ns}"
                )));
            }
            let zm = ZMat::from_dense(
                m.iter()
                    .map(|row| row.iter().map(|&v| Int::from(v)).collect())
                    .collect(),
            );
            let snf = crate::linalg::smith_normal_form(&zm);
            if snf.rank() != ns || snf.diagonal.iter().take(ns).any(|d| !d.is_one()) {
                return Err(bad(
                    "weight-restriction matrix is not a primitive embedding".into(),
                ));
            }
        }
        InclusionData::Factor { index, inner } => {
            let gs = match big {
                GroupDesc::Product(gs) => gs,
                _ => return Err(bad("factor inclusion requires a product".into())),
            };
            let comp = gs
                .get(*index)
                .ok_or_else(|| bad(format!("factor index {index} out of range")))?;
            verify(comp, small, inner)?;
        }
        InclusionData::Componentwise(ds) => {
            let (bs, ss) = match (big, small) {
                (GroupDesc::Product(bs), GroupDesc::Product(ss)) => (bs, ss),
                _ => return Err(bad("componentwise inclusion requires products".into())),
            };
            if bs.len() != ss.len() || ds.len() != bs.len() {
                return Err(bad("componentwise inclusion arity mismatch".into()));
            }
            for ((b, s), d) in bs.iter().zip(ss).zip(ds) {
                verify(b, s, d)?;
            }
        }
        InclusionData::ExtensionNormal => {
            let e = match big {
                GroupDesc::Extension(e) => e,
                _ => return Err(bad("normal inclusion requires an extension".into())),
            };
            if !e.normal().same_group(small) {
                return Err(bad(
                    "small group does not match the extension's normal part".into(),
                ));
            }
        }
    }
    Ok(())
}

fn restrict_label(
    data: &InclusionData,
    big: &GroupDesc,
    small: &GroupDesc,
    label: &IrredLabel,
) -> Result<RepRingElem, GroupError> {
    match data {
        InclusionData::Trivial => {
            let dim = big.label_dim(label)?;
            let mut out = RepRingElem::zero();
            out.add_term(small.trivial_label(), dim);
            Ok(out)
        }
        InclusionData::Identity => Ok(RepRingElem::from_label(label.clone())),
        InclusionData::FiniteMap(map) => {
            let (bf, sf) = match (big, small) {
                (GroupDesc::Finite(bf), GroupDesc::Finite(sf)) => (bf, sf),
                _ => unreachable!("verified on construction"),
            };
            let row = match label {
                IrredLabel::Finite(r) if *r < bf.num_rows() => *r,
                _ => {
                    return Err(GroupError::InvalidGroup(format!(
                        "label {label} does not belong to {}",
                        bf.name()
                    )))
                }
            };
            let values: Vec<Rat> = map.iter().map(|&g| bf.value(row, g)).collect();
            let dec = sf.decompose(&values)?;
            let mut out = RepRingElem::zero();
            for (r, c) in dec {
                out.add_term(IrredLabel::Finite(r), c);
            }
            Ok(out)
        }
        InclusionData::WeightRestriction(m) => {
            let w = match label {
                IrredLabel::Weight(w) if w.len() == m.len() => w,
                _ => {
                    return Err(GroupError::InvalidGroup(format!(
                        "label {label} does not match the weight restriction"
                    )))
                }
            };
            let ns = m.first().map(|row| row.len()).unwrap_or(0);
            let restricted: Vec<i64> = (0..ns)
                .map(|c| w.iter().zip(m).map(|(wi, row)| wi * row[c]).sum())
                .collect();
            Ok(RepRingElem::from_label(IrredLabel::Weight(restricted)))
        }
        InclusionData::Factor { index, inner } => {
            let gs = match big {
                GroupDesc::Product(gs) => gs,
                _ => unreachable!("verified on construction"),
            };
            let ls = match label {
                IrredLabel::Tuple(ls) if ls.len() == gs.len() => ls,
                _ => {
                    return Err(GroupError::InvalidGroup(format!(
                        "label {label} does not belong to the product"
                    )))
                }
            };
            let mut scale = Int::one();
            for (i, (g, l)) in gs.iter().zip(ls).enumerate() {
                if i != *index {
                    scale *= g.label_dim(l)?;
                }
            }
            let r = restrict_label(inner, &gs[*index], small, &ls[*index])?;
            Ok(r.scale(&scale))
        }
        InclusionData::Componentwise(ds) => {
            let (bs, ss) = match (big, small) {
                (GroupDesc::Product(bs), GroupDesc::Product(ss)) => (bs, ss),
                _ => unreachable!("verified on construction"),
            };
            let ls = match label {
                IrredLabel::Tuple(ls) if ls.len() == bs.len() => ls,
                _ => {
                    return Err(GroupError::InvalidGroup(format!(
                        "label {label} does not belong to the product"
                    )))
                }
            };
            // Restrict each component, then distribute sums of labels into tuples.
            let mut acc: Vec<(Vec<IrredLabel>, Int)> = vec![(Vec::new(), Int::one())];
            for (((b, s), d), l) in bs.iter().zip(ss).zip(ds).zip(ls) {
                let r = restrict_label(d, b, s, l)?;
                let mut next = Vec::new();
                for (prefix, c) in &acc {
                    for (rl, rc) in r.iter() {
                        let mut p = prefix.clone();
                        p.push(rl.clone());
                        next.push((p, c * rc));
                    }
                }
                acc = next;
            }
            let mut out = RepRingElem::zero();
            for (tuple, c) in acc {
                out.add_term(IrredLabel::Tuple(tuple), c);
            }
            Ok(out)
        }
        InclusionData::ExtensionNormal => {
            let e = match big {
                GroupDesc::Extension(e) => e,
                _ => unreachable!("verified on construction"),
            };
            Ok(restrict_to_normal(
                e,
                &RepRingElem::from_label(label.clone()),
            ))
        }
    }
}

fn lie_matrix_of(data: &InclusionData, big: &GroupDesc, small: &GroupDesc) -> QMat {
    match data {
        InclusionData::Trivial => QMat::zero(big.lie_dim(), 0),
        InclusionData::Identity | InclusionData::ExtensionNormal => {
            QMat::identity(big.lie_dim())
        }
        InclusionData::FiniteMap(_) => QMat::zero(0, 0),
        InclusionData::WeightRestriction(m) => QMat::from_dense(
            m.iter()
                .map(|row| row.iter().map(|&v| rat(v)).collect())
                .collect(),
        ),
        InclusionData::Factor { index, inner } => {
            let gs = match big {
                GroupDesc::Product(gs) => gs,
                _ => unreachable!("verified on construction"),
            };
            let inner_m = lie_matrix_of(inner, &gs[*index], small);
            let mut m = QMat::zero(big.lie_dim(), small.lie_dim());
            let row_offset: usize = gs[..*index].iter().map(|g| g.lie_dim()).sum();
            for (r, row) in inner_m.rows().enumerate() {
                for (c, v) in row {
                    m.add_entry(row_offset + r, *c, v.clone());
                }
            }
            m
        }
        InclusionData::Componentwise(ds) => {
            let (bs, ss) = match (big, small) {
                (GroupDesc::Product(bs), GroupDesc::Product(ss)) => (bs, ss),
                _ => unreachable!("verified on construction"),
            };
            let blocks: Vec<QMat> = bs
                .iter()
                .zip(ss)
                .zip(ds)
                .map(|((b, s), d)| lie_matrix_of(d, b, s))
                .collect();
            let refs: Vec<&QMat> = blocks.iter().collect();
            QMat::block_diag(&refs)
        }
    }
}

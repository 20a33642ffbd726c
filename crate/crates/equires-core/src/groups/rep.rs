use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};

use crate::linalg::{Int, Rat};

use super::desc::{ExtensionDesc, GroupDesc};
use super::error::GroupError;
use super::label::IrredLabel;

/// Element of a representation ring: a finitely supported integer combination of
/// irreducible labels. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RepRingElem {
    coeffs: BTreeMap<IrredLabel, Int>,
}

impl RepRingElem {
    pub fn zero() -> Self {
        RepRingElem::default()
    }

    pub fn from_label(label: IrredLabel) -> Self {
        let mut e = RepRingElem::default();
        e.add_term(label, Int::one());
        e
    }

    pub fn add_term(&mut self, label: IrredLabel, coeff: Int) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(label).or_insert_with(Int::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key = self
                .coeffs
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.coeffs.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RepRingElem {
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, c)| (l.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Int) -> Self {
        if s.is_zero() {
            return RepRingElem::zero();
        }
        RepRingElem {
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, c)| (l.clone(), c * s))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, label: &IrredLabel) -> Int {
        self.coeffs.get(label).cloned().unwrap_or_else(Int::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IrredLabel, &Int)> {
        self.coeffs.iter()
    }

    /// Virtual dimension: the sum of coefficients weighted by label dimensions.
    pub fn virtual_dim(&self, g: &GroupDesc) -> Result<Int, GroupError> {
        let mut dim = Int::zero();
        for (l, c) in &self.coeffs {
            dim += g.label_dim(l)? * c;
        }
        Ok(dim)
    }
}

/// The irreducible labels of `g` within the weight window, with their dimensions, in
/// canonical label order. The window bounds every torus weight coordinate by `|m_i| <= w`;
/// finite groups ignore it.
pub fn irreducibles(g: &GroupDesc, window: usize) -> Result<Vec<(IrredLabel, Int)>, GroupError> {
    let mut out = match g {
        GroupDesc::Finite(fg) => (0..fg.num_rows())
            .map(|r| (IrredLabel::Finite(r), fg.dim(r)))
            .collect(),
        GroupDesc::Torus(n) => weight_box(*n, window as i64)
            .into_iter()
            .map(|m| (IrredLabel::Weight(m), Int::one()))
            .collect(),
        GroupDesc::Product(gs) => {
            let mut acc: Vec<(Vec<IrredLabel>, Int)> = vec![(Vec::new(), Int::one())];
            for comp in gs {
                let labels = irreducibles(comp, window)?;
                let mut next = Vec::with_capacity(acc.len() * labels.len());
                for (prefix, dim) in &acc {
                    for (l, d) in &labels {
                        let mut p = prefix.clone();
                        p.push(l.clone());
                        next.push((p, dim * d));
                    }
                }
                acc = next;
            }
            acc.into_iter()
                .map(|(ls, d)| (IrredLabel::Tuple(ls), d))
                .collect()
        }
        GroupDesc::Extension(e) => extension_irreducibles(e, window)?,
    };
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// All weight vectors of length `n` with coordinates in `[-w, w]`, lexicographically
/// ascending.
fn weight_box(n: usize, w: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * (2 * w as usize + 1));
        for prefix in &out {
            for c in -w..=w {
                let mut p = prefix.clone();
                p.push(c);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Orbit of a normal-part label under the quotient actions, sorted and deduplicated.
fn orbit_of(e: &ExtensionDesc, label: &IrredLabel) -> Result<Vec<IrredLabel>, GroupError> {
    let mut orbit = BTreeSet::new();
    for a in e.actions() {
        orbit.insert(a.on_labels.apply(label)?);
    }
    Ok(orbit.into_iter().collect())
}

fn extension_irreducibles(
    e: &ExtensionDesc,
    window: usize,
) -> Result<Vec<(IrredLabel, Int)>, GroupError> {
    let normal_labels = irreducibles(e.normal(), window)?;
    let in_window: BTreeSet<IrredLabel> =
        normal_labels.iter().map(|(l, _)| l.clone()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (l, ndim) in &normal_labels {
        if seen.contains(l) {
            continue;
        }
        let orbit = orbit_of(e, l)?;
        for m in &orbit {
            if !in_window.contains(m) {
                return Err(GroupError::OutsideWindow(format!(
                    "orbit member {m} of {l} escapes the window"
                )));
            }
            seen.insert(m.clone());
        }
        if orbit.len() == 1 {
            if !ndim.is_one() {
                return Err(GroupError::Unsupported(format!(
                    "extension over a normal label of dimension {ndim}"
                )));
            }
            for psi in 0..e.quotient().num_rows() {
                out.push((
                    IrredLabel::Fixed(Box::new(l.clone()), psi),
                    e.quotient().dim(psi),
                ));
            }
        } else if orbit.len() == e.quotient().order() {
            let mut dim = Int::zero();
            for m in &orbit {
                dim += e.normal().label_dim(m)?;
            }
            out.push((IrredLabel::Orbit(orbit), dim));
        } else {
            return Err(GroupError::Unsupported(format!(
                "label orbit of size {} under a quotient of order {} (intermediate stabilizer)",
                orbit.len(),
                e.quotient().order()
            )));
        }
    }
    Ok(out)
}

/// Sum, difference, or tensor product of representation-ring elements over `g`.
pub fn tensor(g: &GroupDesc, a: &RepRingElem, b: &RepRingElem) -> Result<RepRingElem, GroupError> {
    let mut out = RepRingElem::zero();
    for (la, ca) in a.iter() {
        for (lb, cb) in b.iter() {
            let prod = tensor_labels(g, la, lb)?;
            out = out.add(&prod.scale(&(ca * cb)));
        }
    }
    Ok(out)
}

fn tensor_labels(
    g: &GroupDesc,
    la: &IrredLabel,
    lb: &IrredLabel,
) -> Result<RepRingElem, GroupError> {
    match (g, la, lb) {
        (GroupDesc::Finite(fg), IrredLabel::Finite(r1), IrredLabel::Finite(r2)) => {
            let values: Vec<Rat> = (0..fg.order())
                .map(|x| fg.value(*r1, x) * fg.value(*r2, x))
                .collect();
            let dec = fg.decompose(&values)?;
            let mut out = RepRingElem::zero();
            for (r, c) in dec {
                out.add_term(IrredLabel::Finite(r), c);
            }
            Ok(out)
        }
        (GroupDesc::Torus(n), IrredLabel::Weight(m1), IrredLabel::Weight(m2)) => {
            if m1.len() != *n || m2.len() != *n {
                return Err(GroupError::InvalidGroup("weight length mismatch".into()));
            }
            let sum = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
            Ok(RepRingElem::from_label(IrredLabel::Weight(sum)))
        }
        (GroupDesc::Product(gs), IrredLabel::Tuple(ls1), IrredLabel::Tuple(ls2)) => {
            if ls1.len() != gs.len() || ls2.len() != gs.len() {
                return Err(GroupError::InvalidGroup("tuple arity mismatch".into()));
            }
            // Componentwise tensor, then distribute into tuples.
            let mut acc: Vec<(Vec<IrredLabel>, Int)> = vec![(Vec::new(), Int::one())];
            for ((comp, l1), l2) in gs.iter().zip(ls1).zip(ls2) {
                let factor = tensor_labels(comp, l1, l2)?;
                let mut next = Vec::new();
                for (prefix, c) in &acc {
                    for (l, cf) in factor.iter() {
                        let mut p = prefix.clone();
                        p.push(l.clone());
                        next.push((p, c * cf));
                    }
                }
                acc = next;
            }
            let mut out = RepRingElem::zero();
            for (ls, c) in acc {
                out.add_term(IrredLabel::Tuple(ls), c);
            }
            Ok(out)
        }
        (GroupDesc::Extension(e), _, _) => {
            let ca = CosetChar::from_label(e, la)?;
            let cb = CosetChar::from_label(e, lb)?;
            decompose_coset_char(e, ca.mul(e, &cb)?)
        }
        _ => Err(GroupError::InvalidGroup(format!(
            "labels {la} and {lb} do not belong to {}",
            g.display_name()
        ))),
    }
}

/// Restriction of an extension-group element to the normal part.
pub fn restrict_to_normal(e: &ExtensionDesc, elem: &RepRingElem) -> RepRingElem {
    let mut out = RepRingElem::zero();
    for (l, c) in elem.iter() {
        match l {
            IrredLabel::Fixed(inner, psi) => {
                out.add_term((**inner).clone(), c * e.quotient().dim(*psi));
            }
            IrredLabel::Orbit(ms) => {
                for m in ms {
                    out.add_term(m.clone(), c.clone());
                }
            }
            other => out.add_term(other.clone(), c.clone()),
        }
    }
    out
}

/// Character of an extension-group element organized by quotient coset: for each quotient
/// element `f`, the restriction of the character to the coset `N·f` written as a finite
/// combination of normal-part labels.
pub(crate) struct CosetChar {
    per_f: Vec<BTreeMap<IrredLabel, Rat>>,
}

impl CosetChar {
    pub(crate) fn from_label(e: &ExtensionDesc, label: &IrredLabel) -> Result<Self, GroupError> {
        let mut per_f = vec![BTreeMap::new(); e.quotient().order()];
        match label {
            IrredLabel::Fixed(inner, psi) => {
                if *psi >= e.quotient().num_rows() {
                    return Err(GroupError::InvalidGroup(format!(
                        "quotient row {psi} out of range"
                    )));
                }
                for (f, map) in per_f.iter_mut().enumerate() {
                    let v = e.quotient().value(*psi, f);
                    if !v.is_zero() {
                        map.insert((**inner).clone(), v);
                    }
                }
            }
            IrredLabel::Orbit(ms) => {
                // Induced characters vanish off the normal part.
                let id = e.quotient().identity();
                for m in ms {
                    per_f[id].insert(m.clone(), Rat::one());
                }
            }
            other => {
                return Err(GroupError::InvalidGroup(format!(
                    "label {other} does not belong to extension {}",
                    e.name()
                )))
            }
        }
        Ok(CosetChar { per_f })
    }

    /// Pointwise product of characters: multiply within each coset, multiplying
    /// normal-part labels.
    fn mul(&self, e: &ExtensionDesc, other: &CosetChar) -> Result<CosetChar, GroupError> {
        let mut per_f = vec![BTreeMap::new(); self.per_f.len()];
        for (f, out) in per_f.iter_mut().enumerate() {
            for (l1, c1) in &self.per_f[f] {
                for (l2, c2) in &other.per_f[f] {
                    let prod = normal_label_mul(e.normal(), l1, l2)?;
                    let coeff = c1 * c2;
                    let entry = out.entry(prod).or_insert_with(Rat::zero);
                    *entry += coeff;
                }
            }
            out.retain(|_, v: &mut Rat| !v.is_zero());
        }
        Ok(CosetChar { per_f })
    }
}

/// Product of two one-dimensional normal-part labels.
fn normal_label_mul(
    normal: &GroupDesc,
    l1: &IrredLabel,
    l2: &IrredLabel,
) -> Result<IrredLabel, GroupError> {
    match (normal, l1, l2) {
        (GroupDesc::Torus(_), IrredLabel::Weight(a), IrredLabel::Weight(b)) => Ok(
            IrredLabel::Weight(a.iter().zip(b).map(|(x, y)| x + y).collect()),
        ),
        (GroupDesc::Finite(fg), IrredLabel::Finite(r1), IrredLabel::Finite(r2)) => {
            // All rows are one-dimensional, so the pointwise product is again a row.
            let target: Vec<Rat> = (0..fg.order())
                .map(|g| fg.value(*r1, g) * fg.value(*r2, g))
                .collect();
            (0..fg.num_rows())
                .find(|&r| (0..fg.order()).all(|g| fg.value(r, g) == target[g]))
                .map(IrredLabel::Finite)
                .ok_or_else(|| {
                    GroupError::InvalidGroup(format!(
                        "{}: product of rows {r1} and {r2} is not a table row",
                        fg.name()
                    ))
                })
        }
        _ => Err(GroupError::Unsupported(
            "normal part labels must be torus weights or finite rows".into(),
        )),
    }
}

/// Decomposes a coset character back into extension labels. Free orbits live only on the
/// identity coset with equal coefficients; fixed labels contribute a quotient class
/// function that is decomposed through the quotient table.
fn decompose_coset_char(e: &ExtensionDesc, ch: CosetChar) -> Result<RepRingElem, GroupError> {
    let id = e.quotient().identity();
    let mut per_f = ch.per_f;
    let mut out = RepRingElem::zero();

    // All labels appearing anywhere.
    let all_labels: BTreeSet<IrredLabel> = per_f
        .iter()
        .flat_map(|m| m.keys().cloned())
        .collect();
    let mut handled: BTreeSet<IrredLabel> = BTreeSet::new();
    for l in &all_labels {
        if handled.contains(l) {
            continue;
        }
        let orbit = orbit_of(e, l)?;
        for m in &orbit {
            handled.insert(m.clone());
        }
        if orbit.len() == 1 {
            // Fixed label: its coefficients across cosets form a quotient class function.
            let values: Vec<Rat> = (0..e.quotient().order())
                .map(|f| per_f[f].get(l).cloned().unwrap_or_else(Rat::zero))
                .collect();
            let dec = e.quotient().decompose(&values)?;
            for f in 0..e.quotient().order() {
                per_f[f].remove(l);
            }
            for (psi, c) in dec {
                out.add_term(IrredLabel::Fixed(Box::new(l.clone()), psi), c);
            }
        } else if orbit.len() == e.quotient().order() {
            // Free orbit: equal integral coefficient on every member, identity coset only.
            let c = per_f[id]
                .get(&orbit[0])
                .cloned()
                .unwrap_or_else(Rat::zero);
            for m in &orbit {
                if per_f[id].get(m).cloned().unwrap_or_else(Rat::zero) != c {
                    return Err(GroupError::NonIntegralDecomposition(format!(
                        "orbit of {m} has unequal coefficients"
                    )));
                }
                for (f, map) in per_f.iter_mut().enumerate() {
                    if f != id && map.contains_key(m) {
                        return Err(GroupError::NonIntegralDecomposition(format!(
                            "free-orbit label {m} appears off the identity coset"
                        )));
                    }
                }
            }
            if !c.is_integer() {
                return Err(GroupError::NonIntegralDecomposition(format!(
                    "orbit coefficient {c} is not an integer"
                )));
            }
            for m in &orbit {
                per_f[id].remove(m);
            }
            out.add_term(IrredLabel::Orbit(orbit), c.to_integer());
        } else {
            return Err(GroupError::Unsupported(
                "label orbit with intermediate stabilizer".into(),
            ));
        }
    }
    if per_f.iter().any(|m| !m.is_empty()) {
        return Err(GroupError::NonIntegralDecomposition(
            "residual terms after decomposition".into(),
        ));
    }
    Ok(out)
}

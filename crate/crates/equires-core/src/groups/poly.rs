//! Invariant polynomials on the Lie algebra and the character-to-polynomial
//! localization map.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::linalg::{Int, QMat, Rat};

use super::desc::GroupDesc;
use super::error::GroupError;
use super::label::IrredLabel;
use super::rep::RepRingElem;

/// Exponent vectors of total degree exactly `degree` in `nvars` variables, in
/// lexicographic order.
pub fn monomials(nvars: usize, degree: usize) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if nvars == 0 {
            if degree == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if nvars == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=degree {
            prefix.push(e);
            rec(nvars - 1, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, degree as u32, &mut Vec::new(), &mut out);
    out
}

/// A finitely supported homogeneous polynomial as monomial-exponent coefficients.
pub type MonomialPoly = BTreeMap<Vec<u32>, Rat>;

/// Substitutes `x_i -> sum_c rows[i][c] * y_c` into a homogeneous polynomial over
/// `rows.len()` variables, producing one over `ncols_out` variables of the same degree.
pub fn substitute_linear(poly: &MonomialPoly, rows: &[Vec<Rat>], ncols_out: usize) -> MonomialPoly {
    let mut out: MonomialPoly = BTreeMap::new();
    for (expo, coeff) in poly {
        // Expand the product of linear forms for this monomial.
        let mut acc: MonomialPoly = BTreeMap::new();
        acc.insert(vec![0; ncols_out], coeff.clone());
        for (var, &e) in expo.iter().enumerate() {
            for _ in 0..e {
                let mut next: MonomialPoly = BTreeMap::new();
                for (a_expo, a_coeff) in &acc {
                    for (c, v) in rows[var].iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let mut ne = a_expo.clone();
                        ne[c] += 1;
                        let entry = next.entry(ne).or_insert_with(Rat::zero);
                        *entry += a_coeff * v;
                    }
                }
                acc = next;
            }
        }
        for (e, c) in acc {
            let entry = out.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Matrix of the substitution `x -> A x` on the degree-`degree` monomial basis (columns
/// indexed by source monomials, rows by target monomials).
pub fn substitution_matrix(a: &QMat, degree: usize) -> QMat {
    let nvars = a.nrows();
    let mons = monomials(nvars, degree);
    let index: BTreeMap<&Vec<u32>, usize> = mons.iter().zip(0..).collect();
    let rows: Vec<Vec<Rat>> = a.to_dense();
    let mut m = QMat::zero(mons.len(), mons.len());
    for (col, mon) in mons.iter().enumerate() {
        let mut p: MonomialPoly = BTreeMap::new();
        p.insert(mon.clone(), Rat::one());
        for (e, c) in substitute_linear(&p, &rows, nvars) {
            m.add_entry(index[&e], col, c);
        }
    }
    m
}

/// A rational basis of the degree-`degree` invariant polynomials of a group, expressed
/// over the monomial basis of its Lie-algebra coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyBasis {
    pub nvars: usize,
    pub degree: usize,
    pub monomials: Vec<Vec<u32>>,
    /// Basis vectors as coefficients over `monomials`.
    pub vectors: Vec<Vec<Rat>>,
}

impl PolyBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Expresses a monomial polynomial in this basis; `None` when it is outside the span.
    pub fn express(&self, poly: &MonomialPoly) -> Option<Vec<Rat>> {
        if poly.keys().any(|e| e.len() != self.nvars) {
            return None;
        }
        let rhs: Vec<Rat> = self
            .monomials
            .iter()
            .map(|m| poly.get(m).cloned().unwrap_or_else(Rat::zero))
            .collect();
        // Coefficients not supported by the monomial list (impossible for matching
        // degree) would be silently dropped; guard by support count.
        let supported = poly
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .all(|(e, _)| self.monomials.contains(e));
        if !supported {
            return None;
        }
        if self.vectors.is_empty() {
            return if rhs.iter().all(|v| v.is_zero()) {
                Some(Vec::new())
            } else {
                None
            };
        }
        let cols = QMat::from_columns(self.monomials.len(), &self.vectors);
        cols.solve_vec(&rhs)
    }

    /// The polynomial named by basis coordinates, over the monomial basis.
    pub fn realize(&self, coords: &[Rat]) -> MonomialPoly {
        let mut out: MonomialPoly = BTreeMap::new();
        for (v, c) in self.vectors.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (m, x) in self.monomials.iter().zip(v) {
                if x.is_zero() {
                    continue;
                }
                let entry = out.entry(m.clone()).or_insert_with(Rat::zero);
                *entry += c * x;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Matrix of the substitution `x -> A x` restricted to this basis. Errors when the
    /// action does not preserve the span.
    pub fn action_matrix(&self, a: &QMat) -> Result<QMat, GroupError> {
        let rows = a.to_dense();
        let mut cols = Vec::with_capacity(self.dim());
        for v in &self.vectors {
            let mut p: MonomialPoly = BTreeMap::new();
            for (m, c) in self.monomials.iter().zip(v) {
                if !c.is_zero() {
                    p.insert(m.clone(), c.clone());
                }
            }
            let image = substitute_linear(&p, &rows, self.nvars);
            let coords = self.express(&image).ok_or_else(|| {
                GroupError::InvalidAction(
                    "linear action does not preserve the invariant polynomials".into(),
                )
            })?;
            cols.push(coords);
        }
        Ok(QMat::from_columns(self.dim(), &cols))
    }
}

/// All Lie-coordinate matrices of the finite parts acting on a group's Lie algebra
/// (each matrix is `lie_dim x lie_dim`).
fn lie_action_matrices(g: &GroupDesc) -> Vec<QMat> {
    match g {
        GroupDesc::Finite(_) | GroupDesc::Torus(_) => Vec::new(),
        GroupDesc::Product(gs) => {
            let total = g.lie_dim();
            let mut out = Vec::new();
            let mut offset = 0;
            for comp in gs {
                let dim = comp.lie_dim();
                for m in lie_action_matrices(comp) {
                    let mut big = QMat::identity(total);
                    for r in 0..dim {
                        for c in 0..dim {
                            big.set(offset + r, offset + c, m.get(r, c));
                        }
                    }
                    out.push(big);
                }
                offset += dim;
            }
            out
        }
        GroupDesc::Extension(e) => e.actions().iter().map(|a| a.on_lie.clone()).collect(),
    }
}

/// Basis of the degree-`degree` invariant polynomials of `g` on its Lie algebra.
pub fn invariant_poly_basis(g: &GroupDesc, degree: usize) -> Result<PolyBasis, GroupError> {
    let nvars = g.lie_dim();
    let mons = monomials(nvars, degree);
    let actions = lie_action_matrices(g);
    let vectors = if actions.is_empty() {
        (0..mons.len())
            .map(|i| {
                let mut v = vec![Rat::zero(); mons.len()];
                v[i] = Rat::one();
                v
            })
            .collect()
    } else {
        let mut stacked = QMat::zero(0, mons.len());
        for a in &actions {
            let s = substitution_matrix(a, degree);
            stacked = stacked.vstack(&s.sub(&QMat::identity(mons.len())));
        }
        stacked.kernel_basis()
    };
    Ok(PolyBasis {
        nvars,
        degree,
        monomials: mons,
        vectors,
    })
}

/// Matrix of polynomial restriction along a Lie-algebra inclusion `lie` (big coordinates
/// in rows, small in columns), from the big invariant basis to the small one.
pub fn poly_restriction_matrix(
    big: &PolyBasis,
    small: &PolyBasis,
    lie: &QMat,
) -> Result<QMat, GroupError> {
    if lie.nrows() != big.nvars || lie.ncols() != small.nvars || big.degree != small.degree {
        return Err(GroupError::InvalidInclusion(
            "inclusion matrix does not match the polynomial bases".into(),
        ));
    }
    let rows = lie.to_dense();
    let mut cols = Vec::with_capacity(big.dim());
    for v in &big.vectors {
        let mut p: MonomialPoly = BTreeMap::new();
        for (m, c) in big.monomials.iter().zip(v) {
            if !c.is_zero() {
                p.insert(m.clone(), c.clone());
            }
        }
        let restricted = substitute_linear(&p, &rows, small.nvars);
        let coords = small.express(&restricted).ok_or_else(|| {
            GroupError::InvalidInclusion(
                "restricted invariant polynomial is not invariant downstairs".into(),
            )
        })?;
        cols.push(coords);
    }
    Ok(QMat::from_columns(small.dim(), &cols))
}

/// Graded invariant polynomial truncated at `max_degree`: component `j` holds coordinates
/// in the degree-`j` invariant basis of the group.
#[derive(Clone, Debug, PartialEq)]
pub struct InvPoly {
    pub group: GroupDesc,
    pub max_degree: usize,
    pub components: Vec<Vec<Rat>>,
}

impl InvPoly {
    pub fn zero(group: &GroupDesc, max_degree: usize) -> Result<Self, GroupError> {
        let mut components = Vec::with_capacity(max_degree + 1);
        for j in 0..=max_degree {
            components.push(vec![Rat::zero(); invariant_poly_basis(group, j)?.dim()]);
        }
        Ok(InvPoly {
            group: group.clone(),
            max_degree,
            components,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.iter().all(|v| v.is_zero()))
    }

    pub fn component(&self, j: usize) -> &[Rat] {
        &self.components[j]
    }

    fn check_compatible(&self, other: &Self) -> Result<(), GroupError> {
        if !self.group.same_group(&other.group) || self.max_degree != other.max_degree {
            return Err(GroupError::InvalidGroup(
                "polynomials belong to different groups or degree bounds".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_compatible(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(InvPoly {
            group: self.group.clone(),
            max_degree: self.max_degree,
            components,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        InvPoly {
            group: self.group.clone(),
            max_degree: self.max_degree,
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|v| v * s).collect())
                .collect(),
        }
    }

    /// Product truncated at the common degree bound.
    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_compatible(other)?;
        let bases: Vec<PolyBasis> = (0..=self.max_degree)
            .map(|j| invariant_poly_basis(&self.group, j))
            .collect::<Result<_, _>>()?;
        let mut components: Vec<MonomialPoly> = vec![BTreeMap::new(); self.max_degree + 1];
        for (ja, ca) in self.components.iter().enumerate() {
            let pa = bases[ja].realize(ca);
            if pa.is_empty() {
                continue;
            }
            for (jb, cb) in other.components.iter().enumerate() {
                if ja + jb > self.max_degree {
                    continue;
                }
                let pb = bases[jb].realize(cb);
                for (ea, va) in &pa {
                    for (eb, vb) in &pb {
                        let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                        let entry = components[ja + jb].entry(e).or_insert_with(Rat::zero);
                        *entry += va * vb;
                    }
                }
            }
        }
        let mut coords = Vec::with_capacity(self.max_degree + 1);
        for (j, mut p) in components.into_iter().enumerate() {
            p.retain(|_, v| !v.is_zero());
            let c = bases[j].express(&p).ok_or_else(|| {
                GroupError::InvalidGroup("product left the invariant subspace".into())
            })?;
            coords.push(c);
        }
        Ok(InvPoly {
            group: self.group.clone(),
            max_degree: self.max_degree,
            components: coords,
        })
    }
}

/// Monomial expansion of the character of one irreducible label in homogeneous degree
/// `degree`, in the Lie coordinates of the ambient group.
fn char_expansion(
    g: &GroupDesc,
    label: &IrredLabel,
    degree: usize,
) -> Result<MonomialPoly, GroupError> {
    let mismatch = || {
        GroupError::InvalidGroup(format!(
            "label {label} does not belong to group {}",
            g.display_name()
        ))
    };
    match (g, label) {
        (GroupDesc::Finite(fg), IrredLabel::Finite(r)) => {
            if *r >= fg.num_rows() {
                return Err(mismatch());
            }
            let mut out = BTreeMap::new();
            if degree == 0 {
                out.insert(Vec::new(), Rat::from(fg.dim(*r)));
            }
            Ok(out)
        }
        (GroupDesc::Torus(n), IrredLabel::Weight(m)) => {
            if m.len() != *n {
                return Err(mismatch());
            }
            Ok(weight_expansion(m, degree))
        }
        (GroupDesc::Product(gs), IrredLabel::Tuple(ls)) => {
            if ls.len() != gs.len() {
                return Err(mismatch());
            }
            // Convolve factor expansions over degree splittings, concatenating exponents.
            let mut acc: Vec<(Vec<u32>, Rat)> = vec![(Vec::new(), Rat::one())];
            let mut acc_by_deg: BTreeMap<usize, Vec<(Vec<u32>, Rat)>> = BTreeMap::new();
            acc_by_deg.insert(0, acc.drain(..).collect());
            for (comp, l) in gs.iter().zip(ls) {
                let mut next: BTreeMap<usize, Vec<(Vec<u32>, Rat)>> = BTreeMap::new();
                for (&d0, terms) in &acc_by_deg {
                    for dj in 0..=(degree - d0) {
                        let exp = char_expansion(comp, l, dj)?;
                        if exp.is_empty() {
                            continue;
                        }
                        for (prefix, c) in terms {
                            for (e, v) in &exp {
                                let mut ne = prefix.clone();
                                ne.extend_from_slice(e);
                                next.entry(d0 + dj).or_default().push((ne, c * v));
                            }
                        }
                    }
                }
                acc_by_deg = next;
            }
            let mut out: MonomialPoly = BTreeMap::new();
            if let Some(terms) = acc_by_deg.get(&degree) {
                for (e, c) in terms {
                    let entry = out.entry(e.clone()).or_insert_with(Rat::zero);
                    *entry += c;
                }
            }
            out.retain(|_, v| !v.is_zero());
            Ok(out)
        }
        (GroupDesc::Extension(e), _) => {
            // Restriction to the normal part carries the full Taylor data at the identity.
            let restricted = super::rep::restrict_to_normal(
                e,
                &RepRingElem::from_label(label.clone()),
            );
            let mut out: MonomialPoly = BTreeMap::new();
            for (l, c) in restricted.iter() {
                let exp = char_expansion(e.normal(), l, degree)?;
                for (m, v) in exp {
                    let entry = out.entry(m).or_insert_with(Rat::zero);
                    *entry += v * Rat::from(c.clone());
                }
            }
            out.retain(|_, v| !v.is_zero());
            Ok(out)
        }
        _ => Err(mismatch()),
    }
}

/// Degree-`j` part of `exp(<m, x>)`: coefficient of `x^a` is `prod m_i^{a_i} / a_i!`.
fn weight_expansion(m: &[i64], degree: usize) -> MonomialPoly {
    let mut out = BTreeMap::new();
    for expo in monomials(m.len(), degree) {
        let mut coeff = Rat::one();
        for (mi, &ai) in m.iter().zip(&expo) {
            for k in 1..=ai {
                coeff *= Rat::new(Int::from(*mi), Int::from(k));
            }
        }
        if !coeff.is_zero() {
            out.insert(expo, coeff);
        }
    }
    out
}

/// The localization map: Taylor expansion of the character at the identity, truncated at
/// total degree `max_degree` and expressed in the invariant bases.
pub fn localize_char(
    g: &GroupDesc,
    e: &RepRingElem,
    max_degree: usize,
) -> Result<InvPoly, GroupError> {
    let mut components = Vec::with_capacity(max_degree + 1);
    for j in 0..=max_degree {
        let basis = invariant_poly_basis(g, j)?;
        let mut total: MonomialPoly = BTreeMap::new();
        for (l, c) in e.iter() {
            let exp = char_expansion(g, l, j)?;
            for (m, v) in exp {
                let entry = total.entry(m).or_insert_with(Rat::zero);
                *entry += v * Rat::from(c.clone());
            }
        }
        total.retain(|_, v| !v.is_zero());
        let coords = basis.express(&total).ok_or_else(|| {
            GroupError::InvalidAction(
                "character expansion is not an invariant polynomial".into(),
            )
        })?;
        components.push(coords);
    }
    Ok(InvPoly {
        group: g.clone(),
        max_degree,
        components,
    })
}

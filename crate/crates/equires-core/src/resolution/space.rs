//! The quotient-side resolution structure: a total complex with a principal isotropy
//! group, boundary strata fibering onto their own complexes, triangle compatibility
//! data between strata, and the validator that certifies all structural invariants.

use std::collections::BTreeMap;

use crate::groups::{GroupDesc, IrredLabel, PolyBasis, SubgroupInclusion};
use crate::linalg::{QMat, Rat};

use super::complex::{CellComplex, CellMap};
use super::error::ResolutionError;
use super::system::{borel_fiber_system, rep_fiber_system, LocalSystem, Monodromy};

/// Selects a coefficient location: the principal (open) stratum, which lives on the
/// total complex, or one of the boundary strata by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratumRef {
    Principal,
    Stratum(usize),
}

/// One boundary stratum: its quotient complex, isotropy group, coefficient monodromy,
/// the face (a closed subcomplex of the total complex) that fibers onto it, and the
/// inclusion of the principal isotropy group into its isotropy group.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub name: String,
    /// Display name of the isotropy class, e.g. "[G]".
    pub class_name: String,
    pub base: CellComplex,
    pub group: GroupDesc,
    pub monodromy: Monodromy,
    /// Total-complex cell ids forming the face subcomplex, sorted ascending.
    pub face: Vec<usize>,
    /// Cellular map from the face subcomplex (in its local ids) onto the base.
    pub fibration: CellMap,
    /// Principal isotropy ⊆ this stratum's isotropy.
    pub inclusion: SubgroupInclusion,
}

/// Compatibility triangle between two strata whose faces intersect: `deeper` has the
/// smaller base dimension (larger isotropy); `map` is the partial cellular map from the
/// shallower base onto the deeper base through which the two fibrations commute.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub deeper: usize,
    pub shallower: usize,
    pub map: BTreeMap<usize, usize>,
}

/// A resolved group action, seen from the quotient: the total complex with its
/// principal isotropy data, plus the boundary strata and their compatibility triangles.
#[derive(Clone, Debug)]
pub struct ResolutionSpace {
    pub name: String,
    pub total: CellComplex,
    pub principal_group: GroupDesc,
    pub principal_monodromy: Monodromy,
    pub strata: Vec<Stratum>,
    pub triangles: Vec<Triangle>,
    /// Asserts that every component of the total complex and of each stratum base is
    /// contractible; checked by the validator and required by the K-theory model.
    pub contractible_strata: bool,
}

impl ResolutionSpace {
    pub fn base_of(&self, r: StratumRef) -> &CellComplex {
        match r {
            StratumRef::Principal => &self.total,
            StratumRef::Stratum(i) => &self.strata[i].base,
        }
    }

    pub fn group_of(&self, r: StratumRef) -> &GroupDesc {
        match r {
            StratumRef::Principal => &self.principal_group,
            StratumRef::Stratum(i) => &self.strata[i].group,
        }
    }

    pub fn monodromy_of(&self, r: StratumRef) -> &Monodromy {
        match r {
            StratumRef::Principal => &self.principal_monodromy,
            StratumRef::Stratum(i) => &self.strata[i].monodromy,
        }
    }

    pub fn refs(&self) -> Vec<StratumRef> {
        std::iter::once(StratumRef::Principal)
            .chain((0..self.strata.len()).map(StratumRef::Stratum))
            .collect()
    }

    pub fn display_of(&self, r: StratumRef) -> String {
        match r {
            StratumRef::Principal => "principal stratum".to_string(),
            StratumRef::Stratum(i) => format!("stratum '{}'", self.strata[i].name),
        }
    }
}

/// The Borel coefficient system of polynomial degree `j` on a stratum's complex, and
/// the invariant-polynomial basis describing its fiber coordinates.
pub fn borel_system(
    s: &ResolutionSpace,
    stratum: StratumRef,
    j: usize,
) -> Result<(LocalSystem, PolyBasis), ResolutionError> {
    borel_fiber_system(s.base_of(stratum), s.group_of(stratum), s.monodromy_of(stratum), j)
}

/// The representation coefficient system at window `w` on a stratum's complex, and the
/// irreducible labels indexing its fiber coordinates.
pub fn rep_system(
    s: &ResolutionSpace,
    stratum: StratumRef,
    w: usize,
) -> Result<(LocalSystem, Vec<IrredLabel>), ResolutionError> {
    rep_fiber_system(s.base_of(stratum), s.group_of(stratum), s.monodromy_of(stratum), w)
}

/// Result of validating a resolution space: a list of human-readable problems, each
/// naming the offending cell, stratum or map. Empty means every invariant holds.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Lexicographic group-size proxy used for the order-reversal check: Lie dimension
/// first, then the order of the finite directions. Subconjugate groups never have a
/// strictly larger size.
fn group_size(g: &GroupDesc) -> (usize, u128) {
    fn finite_order(g: &GroupDesc) -> u128 {
        match g {
            GroupDesc::Finite(f) => f.order() as u128,
            GroupDesc::Torus(_) => 1,
            GroupDesc::Product(gs) => gs.iter().map(finite_order).product(),
            GroupDesc::Extension(e) => {
                finite_order(e.normal()) * e.quotient().order() as u128
            }
        }
    }
    (g.lie_dim(), finite_order(g))
}

/// Untwisted cochain pullback blocks of a fibration: rows are face cells, columns base
/// cells, with a unit entry where a face cell maps onto a base cell of equal dimension.
fn pullback_blocks(face: &CellComplex, base: &CellComplex, map: &CellMap) -> Vec<QMat> {
    let top = face.dim().max(base.dim());
    (0..=top)
        .map(|q| {
            let rows = face.cells_of_dim(q);
            let cols = base.cells_of_dim(q);
            let mut m = QMat::zero(rows.len(), cols.len());
            for (r, &c) in rows.iter().enumerate() {
                let img = map.image[c];
                if base.cell(img).dim == q {
                    let col = cols.binary_search(&img).expect("image cell has this dimension");
                    m.set(r, col, Rat::from(crate::linalg::Int::from(1)));
                }
            }
            m
        })
        .collect()
}

fn boundary_blocks(c: &CellComplex) -> Vec<QMat> {
    let top = c.dim();
    (0..top)
        .map(|q| {
            let rows = c.cells_of_dim(q + 1);
            let cols = c.cells_of_dim(q);
            let mut d = QMat::zero(rows.len(), cols.len());
            for (r, &cell) in rows.iter().enumerate() {
                for &(f, inc) in &c.cell(cell).boundary {
                    let col = cols.binary_search(&f).expect("face has dimension one lower");
                    d.add_entry(r, col, Rat::from(crate::linalg::Int::from(inc)));
                }
            }
            d
        })
        .collect()
}

/// Checks every structural invariant of a resolution space and reports all violations
/// with the cells, strata and maps involved.
pub fn validate_resolution(s: &ResolutionSpace) -> ValidationReport {
    let mut problems = Vec::new();

    for (cell, grandface) in s.total.boundary_square_violations() {
        problems.push(format!(
            "total complex: ∂² ≠ 0 at cell {cell} over face {grandface}"
        ));
    }
    for st in &s.strata {
        for (cell, grandface) in st.base.boundary_square_violations() {
            problems.push(format!(
                "stratum '{}': ∂² ≠ 0 at cell {cell} over face {grandface}",
                st.name
            ));
        }
    }

    if let Err(e) = s.principal_monodromy.verify(&s.total, &s.principal_group) {
        problems.push(format!("principal monodromy: {e}"));
    }
    for st in &s.strata {
        if let Err(e) = st.monodromy.verify(&st.base, &st.group) {
            problems.push(format!("stratum '{}' monodromy: {e}", st.name));
        }
        if !st.inclusion.small().same_group(&s.principal_group) {
            problems.push(format!(
                "stratum '{}': inclusion does not start at the principal group",
                st.name
            ));
        }
        if !st.inclusion.big().same_group(&st.group) {
            problems.push(format!(
                "stratum '{}': inclusion does not land in the stratum group",
                st.name
            ));
        }
        if group_size(&st.group) < group_size(&s.principal_group) {
            problems.push(format!(
                "stratum '{}': isotropy is smaller than the principal isotropy",
                st.name
            ));
        }
    }

    // Face subcomplexes and fibrations.
    let mut faces: Vec<Option<(CellComplex, BTreeMap<usize, usize>)>> = Vec::new();
    for st in &s.strata {
        match s.total.subcomplex(&st.face) {
            Ok((face_complex, translation)) => {
                if let Err(e) = st.fibration.verify(&face_complex, &st.base) {
                    problems.push(format!("stratum '{}' fibration: {e}", st.name));
                    faces.push(Some((face_complex, translation)));
                    continue;
                }
                // Cell-onto-cell surjectivity: every base cell is the image of a face
                // cell of the same dimension.
                let mut hit = vec![false; st.base.len()];
                for (c, &img) in st.fibration.image.iter().enumerate() {
                    if face_complex.cell(c).dim == st.base.cell(img).dim {
                        hit[img] = true;
                    }
                }
                for (b, ok) in hit.iter().enumerate() {
                    if !ok {
                        problems.push(format!(
                            "stratum '{}' fibration: base cell {b} is not the image of an equal-dimension cell",
                            st.name
                        ));
                    }
                }
                // Chain-map identity of the untwisted pullback.
                let p = pullback_blocks(&face_complex, &st.base, &st.fibration);
                let d_face = boundary_blocks(&face_complex);
                let d_base = boundary_blocks(&st.base);
                for q in 0..p.len().saturating_sub(1) {
                    let left = match d_face.get(q) {
                        Some(d) => d.mul(&p[q]),
                        None => QMat::zero(p[q + 1].nrows(), p[q].ncols()),
                    };
                    let right = match d_base.get(q) {
                        Some(d) => p[q + 1].mul(d),
                        None => QMat::zero(p[q + 1].nrows(), p[q].ncols()),
                    };
                    if !left.sub(&right).is_zero_mat() {
                        problems.push(format!(
                            "stratum '{}' fibration: pullback is not a chain map at degree {q}",
                            st.name
                        ));
                    }
                }
                faces.push(Some((face_complex, translation)));
            }
            Err(e) => {
                problems.push(format!("stratum '{}' face: {e}", st.name));
                faces.push(None);
            }
        }
    }

    // Intersections: equal base dimensions are forbidden, and differing ones need a
    // commuting triangle.
    for i in 0..s.strata.len() {
        for j in i + 1..s.strata.len() {
            let shared: Vec<usize> = s.strata[i]
                .face
                .iter()
                .copied()
                .filter(|c| s.strata[j].face.contains(c))
                .collect();
            let Some(&witness) = shared.first() else {
                continue;
            };
            let (di, dj) = (s.strata[i].base.dim(), s.strata[j].base.dim());
            if di == dj {
                problems.push(format!(
                    "strata '{}' and '{}' intersect at cell {witness} but both have base dimension {di}",
                    s.strata[i].name, s.strata[j].name
                ));
                continue;
            }
            let (deeper, shallower) = if di < dj { (i, j) } else { (j, i) };
            let Some(tri) = s
                .triangles
                .iter()
                .find(|t| t.deeper == deeper && t.shallower == shallower)
            else {
                problems.push(format!(
                    "strata '{}' and '{}' intersect at cell {witness} but declare no triangle",
                    s.strata[deeper].name, s.strata[shallower].name
                ));
                continue;
            };
            let (Some((_, tr_deep)), Some((_, tr_shallow))) =
                (&faces[deeper], &faces[shallower])
            else {
                continue;
            };
            for &c in &shared {
                let img_shallow = s.strata[shallower].fibration.image[tr_shallow[&c]];
                let img_deep = s.strata[deeper].fibration.image[tr_deep[&c]];
                match tri.map.get(&img_shallow) {
                    None => problems.push(format!(
                        "triangle '{}'→'{}': map undefined at base cell {img_shallow} (over total cell {c})",
                        s.strata[shallower].name, s.strata[deeper].name
                    )),
                    Some(&through) if through != img_deep => problems.push(format!(
                        "triangle '{}'→'{}' does not commute at total cell {c}: {through} ≠ {img_deep}",
                        s.strata[shallower].name, s.strata[deeper].name
                    )),
                    _ => {}
                }
            }
        }
    }
    for tri in &s.triangles {
        if tri.deeper >= s.strata.len() || tri.shallower >= s.strata.len() {
            problems.push(format!(
                "triangle names stratum {} or {}, which does not exist",
                tri.deeper, tri.shallower
            ));
            continue;
        }
        let (deep, shallow) = (&s.strata[tri.deeper], &s.strata[tri.shallower]);
        if deep.base.dim() >= shallow.base.dim() {
            problems.push(format!(
                "triangle '{}'→'{}': deeper base dimension {} is not smaller than {}",
                shallow.name,
                deep.name,
                deep.base.dim(),
                shallow.base.dim()
            ));
        }
        if group_size(&deep.group) < group_size(&shallow.group) {
            problems.push(format!(
                "triangle '{}'→'{}': isotropy is not order-reversing (deeper group is smaller)",
                shallow.name, deep.name
            ));
        }
        for (&src, &dst) in &tri.map {
            if src >= shallow.base.len() || dst >= deep.base.len() {
                problems.push(format!(
                    "triangle '{}'→'{}': map entry {src} → {dst} is out of range",
                    shallow.name, deep.name
                ));
            } else if deep.base.cell(dst).dim > shallow.base.cell(src).dim {
                problems.push(format!(
                    "triangle '{}'→'{}': map raises dimension at base cell {src}",
                    shallow.name, deep.name
                ));
            }
        }
    }

    // Flatness of the coefficient systems the theories will use.
    for r in s.refs() {
        for j in 0..=2 {
            match borel_system(s, r, j) {
                Ok((system, _)) => {
                    if let Err(e) = crate::cochain::cochain_complex(s.base_of(r), &system) {
                        problems.push(format!(
                            "Borel system of degree {j} on the {}: {e}",
                            s.display_of(r)
                        ));
                    }
                }
                Err(e) => problems.push(format!(
                    "Borel system of degree {j} on the {}: {e}",
                    s.display_of(r)
                )),
            }
        }
        match rep_system(s, r, 1) {
            Ok((system, _)) => {
                if let Err(e) = crate::cochain::cochain_complex(s.base_of(r), &system) {
                    problems.push(format!(
                        "representation system on the {}: {e}",
                        s.display_of(r)
                    ));
                }
            }
            Err(e) => problems.push(format!(
                "representation system on the {}: {e}",
                s.display_of(r)
            )),
        }
    }

    // Contractibility assertions backing the K-theory scope.
    if s.contractible_strata {
        for r in s.refs() {
            let complex = s.base_of(r);
            if let Some(problem) = acyclicity_problem(complex) {
                problems.push(format!("{} is flagged contractible but {problem}", s.display_of(r)));
            }
        }
    }

    ValidationReport { problems }
}

/// `None` when every connected component of the complex is rationally acyclic.
fn acyclicity_problem(complex: &CellComplex) -> Option<String> {
    let labels = complex.components();
    let count = labels.iter().copied().max().map(|m| m + 1).unwrap_or(0);
    for comp in 0..count {
        let cells: Vec<usize> = (0..complex.len()).filter(|&c| labels[c] == comp).collect();
        let (sub, _) = complex
            .subcomplex(&cells)
            .expect("a connected component is face-closed");
        let sys = LocalSystem::trivial(&sub, 1);
        let Ok((x, _)) = crate::cochain::cochain_complex(&sub, &sys) else {
            return Some(format!("component {comp} has no flat trivial system"));
        };
        let h = crate::cochain::cohomology(&x);
        let expected: Vec<usize> = std::iter::once(1)
            .chain(std::iter::repeat(0))
            .take(h.dims.len())
            .collect();
        if h.dims != expected {
            return Some(format!(
                "component {comp} has cohomology dimensions {:?}",
                h.dims
            ));
        }
    }
    None
}

/// Subdivides the total complex once, transporting monodromy, faces and fibrations.
/// Supported whenever every stratum base is zero-dimensional (which covers every
/// builder space); the strata complexes themselves are left untouched.
pub fn subdivide_space(
    s: &ResolutionSpace,
) -> Result<ResolutionSpace, crate::cochain::CochainError> {
    use crate::cochain::CochainError;
    let sub = crate::cochain::subdivide(&s.total)?;
    let principal_monodromy =
        sub.transfer_monodromy(&s.principal_monodromy, s.principal_group.lie_dim())?;
    let mut strata = Vec::with_capacity(s.strata.len());
    for st in &s.strata {
        if st.base.dim() != 0 {
            return Err(CochainError::Unsupported(format!(
                "subdividing a space whose stratum '{}' has a positive-dimensional base",
                st.name
            )));
        }
        let (_, old_translation) = s
            .total
            .subcomplex(&st.face)
            .map_err(CochainError::Resolution)?;
        let new_face = sub.image_cells(&st.face);
        let image: Vec<usize> = new_face
            .iter()
            .map(|&nc| st.fibration.image[old_translation[&sub.carrier(nc)]])
            .collect();
        strata.push(Stratum {
            face: new_face,
            fibration: CellMap { image },
            ..st.clone()
        });
    }
    Ok(ResolutionSpace {
        name: s.name.clone(),
        total: sub.complex().clone(),
        principal_group: s.principal_group.clone(),
        principal_monodromy,
        strata,
        triangles: s.triangles.clone(),
        contractible_strata: s.contractible_strata,
    })
}

//! Barycentric-style subdivision: the order complex of the face poset for regular
//! complexes, and a midpoint edge split for non-regular complexes of dimension ≤ 1.
//! Carrier data lets flat systems, monodromy and subcomplexes transfer to the
//! subdivided complex.

use std::collections::BTreeSet;

use crate::groups::GroupAction;
use crate::linalg::QMat;
use crate::resolution::{Cell, CellComplex, LocalSystem, Monodromy, ResolutionError};

use super::error::CochainError;

/// A subdivision of a cell complex together with the data needed to move coefficient
/// systems across it: for every new cell, the old cells it sits inside (the last one is
/// the carrier, whose fiber the new cell inherits), and for every new boundary
/// incidence a path of old incidences whose composed transport is the new transport.
#[derive(Clone, Debug)]
pub struct Subdivision {
    complex: CellComplex,
    supports: Vec<Vec<usize>>,
    paths: Vec<Vec<Vec<(usize, usize)>>>,
}

impl Subdivision {
    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    /// The old cell whose interior contains the new cell.
    pub fn carrier(&self, new_cell: usize) -> usize {
        *self.supports[new_cell].last().unwrap()
    }

    /// New cells lying inside a closed set of old cells.
    pub fn image_cells(&self, old_cells: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = old_cells.iter().copied().collect();
        (0..self.complex.len())
            .filter(|&c| self.supports[c].iter().all(|o| set.contains(o)))
            .collect()
    }

    /// The flat system induced on the subdivision: fibers by carrier, transports by
    /// composing old transports along the recorded incidence paths.
    pub fn transfer_system(&self, system: &LocalSystem) -> Result<LocalSystem, ResolutionError> {
        let dim = system.dim();
        let transports = self
            .paths
            .iter()
            .map(|per_cell| {
                per_cell
                    .iter()
                    .map(|path| {
                        let mut t = QMat::identity(dim);
                        for &(cell, entry) in path {
                            t = system.transport(cell, entry).mul(&t);
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        LocalSystem::new(&self.complex, dim, transports)
    }

    /// Monodromy data induced on the subdivision, composing group actions along the
    /// same incidence paths. Identity compositions are left unrecorded.
    pub fn transfer_monodromy(
        &self,
        monodromy: &Monodromy,
        lie_dim: usize,
    ) -> Result<Monodromy, CochainError> {
        let mut out = Monodromy::trivial();
        for (cell, per_cell) in self.paths.iter().enumerate() {
            for (entry, path) in per_cell.iter().enumerate() {
                let mut action = GroupAction::identity(lie_dim);
                let mut saw_any = false;
                for &(old_cell, old_entry) in path {
                    if let Some(step) = monodromy.get(old_cell, old_entry) {
                        action = step.compose(&action)?;
                        saw_any = true;
                    }
                }
                if saw_any && !action.is_identity() {
                    out.set(cell, entry, action);
                }
            }
        }
        Ok(out)
    }
}

/// Subdivides once: regular complexes get the order-complex (flag) subdivision in any
/// dimension; non-regular complexes of dimension ≤ 1 get a midpoint edge split.
pub fn subdivide(complex: &CellComplex) -> Result<Subdivision, CochainError> {
    if complex.is_regular() {
        flag_subdivision(complex)
    } else if complex.dim() <= 1 {
        edge_split(complex)
    } else {
        Err(CochainError::Unsupported(
            "subdivision of a non-regular complex of dimension > 1".into(),
        ))
    }
}

/// Strict iterated faces of every cell.
fn faces_below(complex: &CellComplex) -> Vec<BTreeSet<usize>> {
    let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); complex.len()];
    let mut order: Vec<usize> = (0..complex.len()).collect();
    order.sort_by_key(|&c| complex.cell(c).dim);
    for c in order {
        let mut set = BTreeSet::new();
        for &(f, _) in &complex.cell(c).boundary {
            set.insert(f);
            set.extend(below[f].iter().copied());
        }
        below[c] = set;
    }
    below
}

/// Deterministic saturated path of boundary incidences from `from` up to `to`:
/// at each level the smallest eligible face wins. Returns steps bottom-to-top.
fn saturated_path(
    complex: &CellComplex,
    below: &[BTreeSet<usize>],
    from: usize,
    to: usize,
) -> Vec<(usize, usize)> {
    if from == to {
        return Vec::new();
    }
    let mut best: Option<(usize, usize)> = None;
    for (entry, &(f, _)) in complex.cell(to).boundary.iter().enumerate() {
        if f == from || below[f].contains(&from) {
            if best.map_or(true, |(bf, _)| f < bf) {
                best = Some((f, entry));
            }
        }
    }
    let (f, entry) = best.expect("face below the cell is reachable through its boundary");
    let mut path = saturated_path(complex, below, from, f);
    path.push((to, entry));
    path
}

fn flag_subdivision(complex: &CellComplex) -> Result<Subdivision, CochainError> {
    let below = faces_below(complex);
    // All chains of the face poset, dimension strictly increasing along each chain.
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut ending_at: Vec<Vec<Vec<usize>>> = vec![Vec::new(); complex.len()];
    let mut order: Vec<usize> = (0..complex.len()).collect();
    order.sort_by_key(|&c| complex.cell(c).dim);
    for &c in &order {
        let mut here = vec![vec![c]];
        for &f in &below[c] {
            for ch in &ending_at[f] {
                let mut ext = ch.clone();
                ext.push(c);
                here.push(ext);
            }
        }
        ending_at[c] = here.clone();
        chains.extend(here);
    }
    chains.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let index_of = |ch: &[usize]| -> usize {
        chains
            .binary_search_by(|probe| (probe.len(), probe.as_slice()).cmp(&(ch.len(), ch)))
            .expect("face chain is enumerated")
    };

    let mut cells = Vec::with_capacity(chains.len());
    let mut paths = Vec::with_capacity(chains.len());
    for ch in &chains {
        let k = ch.len() - 1;
        let mut boundary = Vec::new();
        let mut cell_paths = Vec::new();
        if k > 0 {
            for i in 0..=k {
                let mut face: Vec<usize> = ch.clone();
                face.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                boundary.push((index_of(&face), sign));
                if i == k {
                    cell_paths.push(saturated_path(complex, &below, ch[k - 1], ch[k]));
                } else {
                    cell_paths.push(Vec::new());
                }
            }
        }
        cells.push(Cell { dim: k, boundary });
        paths.push(cell_paths);
    }
    let complex = CellComplex::new(cells).map_err(CochainError::Resolution)?;
    Ok(Subdivision {
        complex,
        supports: chains,
        paths,
    })
}

fn edge_split(complex: &CellComplex) -> Result<Subdivision, CochainError> {
    let vertices: Vec<usize> = (0..complex.len())
        .filter(|&c| complex.cell(c).dim == 0)
        .collect();
    let edges: Vec<usize> = (0..complex.len())
        .filter(|&c| complex.cell(c).dim == 1)
        .collect();
    for &e in &edges {
        let b = &complex.cell(e).boundary;
        if b.len() != 2 || b.iter().any(|&(_, s)| s.abs() != 1) {
            return Err(CochainError::Unsupported(format!(
                "edge split needs two unit-incidence endpoints on cell {e}"
            )));
        }
    }
    let new_vertex = |v: usize| vertices.binary_search(&v).expect("vertex is enumerated");
    let midpoint = |e: usize| vertices.len() + edges.binary_search(&e).expect("edge");

    let mut cells: Vec<Cell> = Vec::new();
    let mut supports: Vec<Vec<usize>> = Vec::new();
    let mut paths: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for &v in &vertices {
        cells.push(Cell {
            dim: 0,
            boundary: Vec::new(),
        });
        supports.push(vec![v]);
        paths.push(Vec::new());
    }
    for &e in &edges {
        cells.push(Cell {
            dim: 0,
            boundary: Vec::new(),
        });
        supports.push(vec![e]);
        paths.push(Vec::new());
    }
    for &e in &edges {
        let b = &complex.cell(e).boundary;
        let (v0, s0) = b[0];
        let (v1, s1) = b[1];
        cells.push(Cell {
            dim: 1,
            boundary: vec![(new_vertex(v0), s0), (midpoint(e), -s0)],
        });
        supports.push(vec![v0, e]);
        paths.push(vec![vec![(e, 0)], Vec::new()]);
        cells.push(Cell {
            dim: 1,
            boundary: vec![(new_vertex(v1), s1), (midpoint(e), s0)],
        });
        supports.push(vec![v1, e]);
        paths.push(vec![vec![(e, 1)], Vec::new()]);
    }
    let complex = CellComplex::new(cells).map_err(CochainError::Resolution)?;
    Ok(Subdivision {
        complex,
        supports,
        paths,
    })
}

//! Finite cell complexes with explicit per-incidence boundary data.

use std::collections::{BTreeMap, BTreeSet};

use super::error::ResolutionError;

/// One cell: its dimension and boundary incidences. The boundary is a *list* of
/// (face id, incidence number) entries; the same face may appear several times (a loop
/// edge attached to one vertex at both ends), because coefficient transports are
/// assigned per entry, not per face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    pub boundary: Vec<(usize, i64)>,
}

/// A finite cell complex. Structural sanity (face ids in range, faces one dimension
/// lower, nonzero incidence numbers) is enforced on construction; the homological
/// condition `boundary * boundary = 0` is checked by validators and by the cochain
/// builder so that deliberately corrupted inputs can still be represented and reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    cells: Vec<Cell>,
}

impl CellComplex {
    pub fn new(cells: Vec<Cell>) -> Result<Self, ResolutionError> {
        for (id, cell) in cells.iter().enumerate() {
            for &(face, inc) in &cell.boundary {
                if face >= cells.len() {
                    return Err(ResolutionError::InvalidComplex(format!(
                        "cell {id} lists face {face}, which does not exist"
                    )));
                }
                if cell.dim == 0 {
                    return Err(ResolutionError::InvalidComplex(format!(
                        "cell {id} has dimension 0 but a nonempty boundary"
                    )));
                }
                if cells[face].dim + 1 != cell.dim {
                    return Err(ResolutionError::InvalidComplex(format!(
                        "cell {id} (dim {}) lists face {face} of dim {}",
                        cell.dim, cells[face].dim
                    )));
                }
                if inc == 0 {
                    return Err(ResolutionError::InvalidComplex(format!(
                        "cell {id} lists face {face} with incidence 0"
                    )));
                }
            }
        }
        Ok(CellComplex { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Top dimension (0 for an empty complex).
    pub fn dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    /// Ids of the cells of dimension `d`, ascending.
    pub fn cells_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].dim == d)
            .collect()
    }

    /// Pairs of cells violating `boundary * boundary = 0` over the integers.
    pub fn boundary_square_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for (id, cell) in self.cells.iter().enumerate() {
            if cell.dim < 2 {
                continue;
            }
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(face, inc) in &cell.boundary {
                for &(f2, inc2) in &self.cells[face].boundary {
                    *acc.entry(f2).or_insert(0) += inc * inc2;
                }
            }
            for (f2, total) in acc {
                if total != 0 {
                    bad.push((id, f2));
                }
            }
        }
        bad
    }

    /// Regular in the sense the subdivision needs: every boundary list has pairwise
    /// distinct faces with incidence numbers ±1.
    pub fn is_regular(&self) -> bool {
        self.cells.iter().all(|c| {
            let mut seen = BTreeSet::new();
            c.boundary
                .iter()
                .all(|&(f, inc)| (inc == 1 || inc == -1) && seen.insert(f))
        })
    }

    /// Whether `cells` (total-complex ids) form a subcomplex: closed under taking faces.
    /// Returns the first offending (cell, missing face) pair if not.
    pub fn subcomplex_violation(&self, cells: &[usize]) -> Option<(usize, usize)> {
        let set: BTreeSet<usize> = cells.iter().copied().collect();
        for &c in cells {
            for &(f, _) in &self.cells[c].boundary {
                if !set.contains(&f) {
                    return Some((c, f));
                }
            }
        }
        None
    }

    /// The subcomplex on the given (sorted, deduplicated) total-cell ids, with cells
    /// renumbered by position; returns the complex and the id translation total -> sub.
    pub fn subcomplex(
        &self,
        cells: &[usize],
    ) -> Result<(CellComplex, BTreeMap<usize, usize>), ResolutionError> {
        let mut ids: Vec<usize> = cells.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if let Some(&out) = ids.iter().find(|&&c| c >= self.cells.len()) {
            return Err(ResolutionError::InvalidComplex(format!(
                "subcomplex lists cell {out}, which does not exist"
            )));
        }
        if let Some((c, f)) = self.subcomplex_violation(&ids) {
            return Err(ResolutionError::InvalidComplex(format!(
                "subcomplex is not closed under faces: cell {c} needs face {f}"
            )));
        }
        let translate: BTreeMap<usize, usize> =
            ids.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let sub_cells = ids
            .iter()
            .map(|&old| Cell {
                dim: self.cells[old].dim,
                boundary: self.cells[old]
                    .boundary
                    .iter()
                    .map(|&(f, inc)| (translate[&f], inc))
                    .collect(),
            })
            .collect();
        Ok((CellComplex { cells: sub_cells }, translate))
    }

    /// Connected components across boundary incidences: per cell, a component index.
    pub fn components(&self) -> Vec<usize> {
        let n = self.cells.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (id, cell) in self.cells.iter().enumerate() {
            for &(f, _) in &cell.boundary {
                let a = find(&mut parent, id);
                let b = find(&mut parent, f);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut label = BTreeMap::new();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let root = find(&mut parent, i);
            let next = label.len();
            out.push(*label.entry(root).or_insert(next));
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

/// A single point.
pub fn point() -> CellComplex {
    CellComplex::new(vec![Cell {
        dim: 0,
        boundary: vec![],
    }])
    .expect("point is valid")
}

/// The unit interval: vertices 0, 1 and one edge oriented from 0 to 1.
pub fn interval() -> CellComplex {
    CellComplex::new(vec![
        Cell {
            dim: 0,
            boundary: vec![],
        },
        Cell {
            dim: 0,
            boundary: vec![],
        },
        Cell {
            dim: 1,
            boundary: vec![(1, 1), (0, -1)],
        },
    ])
    .expect("interval is valid")
}

/// The circle as one vertex and one loop edge; both boundary entries land on the vertex,
/// so coefficient transports distinguish the two ends.
pub fn circle_loop() -> CellComplex {
    CellComplex::new(vec![
        Cell {
            dim: 0,
            boundary: vec![],
        },
        Cell {
            dim: 1,
            boundary: vec![(0, 1), (0, -1)],
        },
    ])
    .expect("circle is valid")
}

/// The circle as a regular complex with `n >= 2` vertices and `n` edges.
pub fn circle_cells(n: usize) -> CellComplex {
    assert!(n >= 2, "a regular circle needs at least two vertices");
    let mut cells: Vec<Cell> = (0..n)
        .map(|_| Cell {
            dim: 0,
            boundary: vec![],
        })
        .collect();
    for i in 0..n {
        cells.push(Cell {
            dim: 1,
            boundary: vec![((i + 1) % n, 1), (i, -1)],
        });
    }
    CellComplex::new(cells).expect("circle complex is valid")
}

/// The 2-torus as a one-vertex CW complex: two loops a, b and a 2-cell attached along
/// the commutator.
pub fn torus_cw() -> CellComplex {
    CellComplex::new(vec![
        Cell {
            dim: 0,
            boundary: vec![],
        },
        Cell {
            dim: 1,
            boundary: vec![(0, 1), (0, -1)],
        },
        Cell {
            dim: 1,
            boundary: vec![(0, 1), (0, -1)],
        },
        Cell {
            dim: 2,
            boundary: vec![(1, 1), (2, 1), (1, -1), (2, -1)],
        },
    ])
    .expect("torus is valid")
}

/// The simplicial complex generated by the given facets (vertex lists); all faces are
/// included, cells are ordered by (dimension, vertex tuple), and boundaries carry the
/// standard alternating signs. Vertices are the integers named by the facets.
pub fn simplicial(facets: &[Vec<usize>]) -> Result<CellComplex, ResolutionError> {
    let mut simplices: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let mut v = f.clone();
        v.sort_unstable();
        v.dedup();
        if v.len() != f.len() {
            return Err(ResolutionError::InvalidComplex(format!(
                "facet {f:?} repeats a vertex"
            )));
        }
        // Insert every nonempty subset.
        let n = v.len();
        for mask in 1u32..(1 << n) {
            let sub: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| v[i]).collect();
            simplices.insert(sub);
        }
    }
    let mut ordered: Vec<Vec<usize>> = simplices.into_iter().collect();
    ordered.sort_by_key(|s| (s.len(), s.clone()));
    let index: BTreeMap<&Vec<usize>, usize> = ordered.iter().zip(0..).collect();
    let cells = ordered
        .iter()
        .map(|s| {
            let boundary = if s.len() == 1 {
                Vec::new()
            } else {
                (0..s.len())
                    .map(|i| {
                        let mut face = s.clone();
                        face.remove(i);
                        (index[&face], if i % 2 == 0 { 1i64 } else { -1 })
                    })
                    .collect()
            };
            Cell {
                dim: s.len() - 1,
                boundary,
            }
        })
        .collect();
    CellComplex::new(cells)
}

/// Boundary of the 3-simplex: a simplicial 2-sphere.
pub fn simplicial_sphere() -> CellComplex {
    simplicial(&[
        vec![0, 1, 2],
        vec![0, 1, 3],
        vec![0, 2, 3],
        vec![1, 2, 3],
    ])
    .expect("sphere is valid")
}

/// A cellular map: the image cell of every source cell. Images may collapse dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMap {
    pub image: Vec<usize>,
}

impl CellMap {
    pub fn identity(n: usize) -> Self {
        CellMap {
            image: (0..n).collect(),
        }
    }

    /// Collapse everything onto one target cell.
    pub fn collapse_to(n: usize, target: usize) -> Self {
        CellMap {
            image: vec![target; n],
        }
    }

    /// Checks the map is defined on every source cell, lands in the target, does not
    /// raise dimension, and is compatible with incidences: the image of a face is the
    /// image of the cell or one of its listed faces.
    pub fn verify(&self, src: &CellComplex, dst: &CellComplex) -> Result<(), ResolutionError> {
        if self.image.len() != src.len() {
            return Err(ResolutionError::InvalidSpace(format!(
                "cell map defined on {} cells, complex has {}",
                self.image.len(),
                src.len()
            )));
        }
        for (c, &img) in self.image.iter().enumerate() {
            if img >= dst.len() {
                return Err(ResolutionError::InvalidSpace(format!(
                    "cell map sends cell {c} outside the target complex"
                )));
            }
            if dst.cell(img).dim > src.cell(c).dim {
                return Err(ResolutionError::InvalidSpace(format!(
                    "cell map raises the dimension of cell {c}"
                )));
            }
            for &(f, _) in &src.cell(c).boundary {
                let fi = self.image[f];
                let ok = fi == img
                    || dst
                        .cell(img)
                        .boundary
                        .iter()
                        .any(|&(g, _)| g == fi);
                if !ok {
                    return Err(ResolutionError::InvalidSpace(format!(
                        "cell map is not cellular at incidence ({c}, {f})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks every target cell is hit.
    pub fn verify_surjective(&self, dst: &CellComplex) -> Result<(), ResolutionError> {
        let mut hit = vec![false; dst.len()];
        for &img in &self.image {
            if img < hit.len() {
                hit[img] = true;
            }
        }
        if let Some(missed) = hit.iter().position(|h| !h) {
            return Err(ResolutionError::InvalidSpace(format!(
                "cell map misses target cell {missed}"
            )));
        }
        Ok(())
    }
}

//! Flat coefficient systems: monodromy data per incidence and the concrete local
//! systems (Borel and representation fibers) it generates.

use std::collections::BTreeMap;

use num::One;

use crate::groups::{
    invariant_poly_basis, irreducibles, GroupAction, GroupDesc, IrredLabel, PolyBasis,
};
use crate::linalg::{QMat, Rat};

use super::complex::CellComplex;
use super::error::ResolutionError;

/// Coefficient twisting data on a complex: a group action per boundary incidence,
/// identity where absent. Keys are (cell id, boundary entry index).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Monodromy {
    entries: BTreeMap<(usize, usize), GroupAction>,
}

impl Monodromy {
    pub fn trivial() -> Self {
        Monodromy::default()
    }

    pub fn set(&mut self, cell: usize, entry: usize, action: GroupAction) {
        self.entries.insert((cell, entry), action);
    }

    pub fn get(&self, cell: usize, entry: usize) -> Option<&GroupAction> {
        self.entries.get(&(cell, entry))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &GroupAction)> {
        self.entries.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.is_empty()
    }

    /// Structural check against a base complex and the group whose data is twisted.
    pub fn verify(&self, base: &CellComplex, group: &GroupDesc) -> Result<(), ResolutionError> {
        let lie = group.lie_dim();
        for (&(cell, entry), action) in &self.entries {
            if cell >= base.len() || entry >= base.cell(cell).boundary.len() {
                return Err(ResolutionError::InvalidSystem(format!(
                    "monodromy names incidence ({cell}, {entry}), which does not exist"
                )));
            }
            if action.on_lie.nrows() != lie || action.on_lie.ncols() != lie {
                return Err(ResolutionError::InvalidSystem(format!(
                    "monodromy at ({cell}, {entry}) acts on {} Lie coordinates, group has {lie}",
                    action.on_lie.nrows()
                )));
            }
            if action.on_lie.rank() != lie {
                return Err(ResolutionError::InvalidSystem(format!(
                    "monodromy at ({cell}, {entry}) is singular on Lie coordinates"
                )));
            }
        }
        Ok(())
    }
}

/// A flat system over a cell complex: a fixed fiber dimension and one invertible
/// transport matrix per boundary incidence entry, from the face fiber into the cell
/// fiber. Flatness itself (the induced differential squaring to zero) is certified when
/// the cochain complex is built.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalSystem {
    dim: usize,
    transports: Vec<Vec<QMat>>,
}

impl LocalSystem {
    pub fn new(
        base: &CellComplex,
        dim: usize,
        transports: Vec<Vec<QMat>>,
    ) -> Result<Self, ResolutionError> {
        if transports.len() != base.len() {
            return Err(ResolutionError::InvalidSystem(format!(
                "{} transport lists for {} cells",
                transports.len(),
                base.len()
            )));
        }
        for (cell, list) in transports.iter().enumerate() {
            if list.len() != base.cell(cell).boundary.len() {
                return Err(ResolutionError::InvalidSystem(format!(
                    "cell {cell} has {} boundary entries but {} transports",
                    base.cell(cell).boundary.len(),
                    list.len()
                )));
            }
            for (entry, t) in list.iter().enumerate() {
                if t.nrows() != dim || t.ncols() != dim {
                    return Err(ResolutionError::InvalidSystem(format!(
                        "transport at ({cell}, {entry}) is {}x{}, fiber has dimension {dim}",
                        t.nrows(),
                        t.ncols()
                    )));
                }
                if t.rank() != dim {
                    return Err(ResolutionError::InvalidSystem(format!(
                        "transport at ({cell}, {entry}) is not invertible"
                    )));
                }
            }
        }
        Ok(LocalSystem { dim, transports })
    }

    pub fn trivial(base: &CellComplex, dim: usize) -> Self {
        let transports = base
            .cells()
            .iter()
            .map(|c| vec![QMat::identity(dim); c.boundary.len()])
            .collect();
        LocalSystem { dim, transports }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn transport(&self, cell: usize, entry: usize) -> &QMat {
        &self.transports[cell][entry]
    }
}

/// The Borel system of degree `j`: fiber the degree-`j` invariant polynomials of the
/// group, transports the monodromy actions on polynomial coordinates. Also returns the
/// fiber basis.
pub fn borel_fiber_system(
    base: &CellComplex,
    group: &GroupDesc,
    monodromy: &Monodromy,
    degree: usize,
) -> Result<(LocalSystem, PolyBasis), ResolutionError> {
    monodromy.verify(base, group)?;
    let basis = invariant_poly_basis(group, degree)?;
    let dim = basis.dim();
    let mut transports = Vec::with_capacity(base.len());
    for (cell, c) in base.cells().iter().enumerate() {
        let mut list = Vec::with_capacity(c.boundary.len());
        for entry in 0..c.boundary.len() {
            let t = match monodromy.get(cell, entry) {
                None => QMat::identity(dim),
                Some(action) => basis.action_matrix(&action.on_lie)?,
            };
            list.push(t);
        }
        transports.push(list);
    }
    Ok((LocalSystem::new(base, dim, transports)?, basis))
}

/// The representation system at window `w`: fiber the windowed irreducible labels of the
/// group, transports the monodromy permutations of labels. Also returns the label basis.
pub fn rep_fiber_system(
    base: &CellComplex,
    group: &GroupDesc,
    monodromy: &Monodromy,
    window: usize,
) -> Result<(LocalSystem, Vec<IrredLabel>), ResolutionError> {
    monodromy.verify(base, group)?;
    let labels: Vec<IrredLabel> = irreducibles(group, window)?
        .into_iter()
        .map(|(l, _)| l)
        .collect();
    let dim = labels.len();
    let position = |l: &IrredLabel| -> Result<usize, ResolutionError> {
        labels.iter().position(|m| m == l).ok_or_else(|| {
            ResolutionError::InvalidSystem(format!(
                "monodromy moves label {l} outside window {window}"
            ))
        })
    };
    let mut transports = Vec::with_capacity(base.len());
    for (cell, c) in base.cells().iter().enumerate() {
        let mut list = Vec::with_capacity(c.boundary.len());
        for entry in 0..c.boundary.len() {
            let t = match monodromy.get(cell, entry) {
                None => QMat::identity(dim),
                Some(action) => {
                    let mut m = QMat::zero(dim, dim);
                    for (col, l) in labels.iter().enumerate() {
                        let image = action.on_labels.apply(l)?;
                        m.add_entry(position(&image)?, col, Rat::one());
                    }
                    m
                }
            };
            list.push(t);
        }
        transports.push(list);
    }
    Ok((LocalSystem::new(base, dim, transports)?, labels))
}

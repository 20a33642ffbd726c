//! Resolved spaces: finite cell complexes with incidence data, boundary strata with
//! their isotropy groups and fibrations, flat local systems over the cells, and the
//! structural validator.

mod builders;
mod complex;
mod error;
mod space;
mod system;

pub use builders::{
    build_free_action, build_mobius_example, build_sphere_rotation, build_trivial_action,
    circle_sphere_inclusion, z2_sphere_inclusion,
};
pub use complex::{
    circle_cells, circle_loop, interval, point, simplicial, simplicial_sphere, torus_cw, Cell,
    CellComplex, CellMap,
};
pub use error::ResolutionError;
pub use space::{
    borel_system, rep_system, subdivide_space, validate_resolution, ResolutionSpace, Stratum,
    StratumRef, Triangle, ValidationReport,
};
pub use system::{borel_fiber_system, rep_fiber_system, LocalSystem, Monodromy};

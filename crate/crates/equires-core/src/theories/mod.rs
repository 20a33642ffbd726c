//! The three cohomology theories of a resolved action computed on the quotient —
//! equivariant cohomology, delocalized equivariant cohomology, and equivariant
//! K-theory — together with the localization map, the equivariant Chern character,
//! and the fixed-point push-forward.

mod ab;
mod assemble;
mod chern;
mod error;
mod hdl;
mod hg;
mod ktheory;
mod result;

pub use ab::ab_pushforward;
pub use assemble::{assemble_complex, Assembled, Coefficients};
pub use chern::{
    chern_character, chern_triangle_check, localization_map, DlClass, HgComponent, TriangleReport,
};
pub use error::TheoryError;
pub use hdl::delocalized_cohomology;
pub use hg::equivariant_cohomology;
pub use ktheory::{k_theory, KClass};
pub use result::{Grading, Theory, TheoryResult};

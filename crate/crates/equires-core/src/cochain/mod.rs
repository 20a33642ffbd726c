//! Exact cochain algebra: cellular complexes with local coefficients, compatibility
//! (pullback/relative) complexes, cohomology over ℚ and ℤ, long-exact-sequence checks,
//! and subdivision.

mod complex;
mod error;
mod les;
mod maps;
mod subdivide;

pub use complex::{
    cochain_complex, cohomology, cohomology_basis, cohomology_integral, CochainLayout,
    CohomologyBasis, Complex, GradedCohomology,
};
pub use error::CochainError;
pub use les::{les_check, les_suite, LesMaps, LesReport};
pub use maps::{pullback_complex, relative_complex, ChainMap, Pullback, PullbackPart};
pub use subdivide::{subdivide, Subdivision};

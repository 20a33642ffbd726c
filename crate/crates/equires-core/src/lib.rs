//! Exact calculators for the cohomology theories attached to a resolved compact group
//! action: equivariant cohomology, delocalized equivariant cohomology, and equivariant
//! K-theory, all computed on the quotient side from cell complexes with flat coefficient
//! systems.
//!
//! Everything is exact: ranks, kernels and Smith normal forms are computed over the
//! rationals and integers with arbitrary precision, never floating point.
//!
//! Module map:
//! - [`linalg`] — sparse exact matrices, fraction-free ranks, Smith normal form;
//! - [`groups`] — compact group descriptions, representation rings, invariant polynomials;
//! - [`resolution`] — cell complexes, flat local systems, resolution structures, builders;
//! - [`cochain`] — cochain complexes, cohomology, pullback/relative complexes, subdivision;
//! - [`theories`] — the equivariant theories, localization, Chern character, push-forward.

pub mod cochain;
pub mod groups;
pub mod linalg;
pub mod resolution;
pub mod theories;

pub use linalg::{Int, QMat, Rat, ZMat};

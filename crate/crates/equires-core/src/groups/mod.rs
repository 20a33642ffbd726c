//! Compact groups at desk scale: finite groups with rational character tables, tori,
//! their products, and extensions of a finite group by such a normal part. Provides
//! representation rings with canonical irreducible labels, restriction along subgroup
//! inclusions, invariant polynomial rings on the Lie algebra, invariants of finite
//! linear actions, and the character-to-polynomial localization map.

mod desc;
mod error;
mod finite;
mod inclusion;
mod invariants;
mod label;
mod poly;
mod rep;

pub use desc::{ExtensionDesc, GroupDesc};
pub use error::GroupError;
pub use finite::{cyclic, dihedral, symmetric, trivial_group, FiniteGroup};
pub use inclusion::{InclusionData, SubgroupInclusion};
pub use invariants::{finite_invariants, invariant_sublattice, invariant_subspace};
pub use label::{GroupAction, IrredLabel, LabelAction};
pub use poly::{
    invariant_poly_basis, localize_char, monomials, poly_restriction_matrix,
    substitute_linear, substitution_matrix, InvPoly, MonomialPoly, PolyBasis,
};
pub use rep::{irreducibles, restrict_to_normal, tensor, RepRingElem};

//! Exact sparse linear algebra over generic scalars.
//!
//! The matrix layer is generic over [`Scalar`] (an exact commutative ring) with the two
//! instantiations the rest of the crate uses aliased here: rational matrices [`QMat`] for
//! rank/kernel computations and integer matrices [`ZMat`] for Smith normal forms.

mod scalar;
mod snf;
mod sparse;

pub use scalar::{FieldScalar, Scalar};
pub use snf::{integer_kernel_basis, smith_normal_form, Snf};
pub use sparse::{Rref, SparseMat};

/// Exact rational scalar used for all rank and kernel computations.
pub type Rat = num::BigRational;
/// Arbitrary-precision integer scalar used for Smith normal forms and lattices.
pub type Int = num::BigInt;
/// Sparse matrix over [`Rat`].
pub type QMat = SparseMat<Rat>;
/// Sparse matrix over [`Int`].
pub type ZMat = SparseMat<Int>;

/// Shorthand for a rational from an `i64`.
pub fn rat(v: i64) -> Rat {
    num::BigRational::from_integer(Int::from(v))
}

/// Shorthand for the rational `num/den`; panics on zero denominator.
pub fn frac(num: i64, den: i64) -> Rat {
    num::BigRational::new(Int::from(num), Int::from(den))
}

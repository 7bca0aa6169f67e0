//! Exact fields, dense matrices and canonical subspaces.

mod enumerate;
mod field;
mod finite;
mod matrix;
mod rational;
mod subspace;

pub(crate) use enumerate::check_budget;
pub use enumerate::{enumerate_vectors, projective_points, VectorSweep, DEFAULT_BUDGET};
pub use field::{is_square, Field, FieldSpec, ScalarRepr};
pub use finite::{FiniteField, Fq, MAX_TABLE_ORDER};
pub use matrix::{Matrix, Rref};
pub use rational::Rationals;
pub(crate) use subspace::unit;
pub use subspace::Subspace;

/// Vector of field elements; elements of a Lie algebra are coordinate vectors.
pub type Vector<F> = Vec<<F as Field>::Elem>;

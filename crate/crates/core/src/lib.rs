pub mod classify;
pub mod engel;
pub mod error;
pub mod exactmath;
pub mod lattice;
pub mod liealg;
pub mod structure;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
pub use exactmath::{Field, FieldSpec, FiniteField, Fq, Rationals, Subspace};
pub use liealg::LieAlgebra;

pub type FiniteAlgebra = LieAlgebra<FiniteField>;
pub type RationalAlgebra = LieAlgebra<Rationals>;
pub type FiniteSubspace = Subspace<FiniteField>;
pub type RationalSubspace = Subspace<Rationals>;

//! Exact integer and rational linear algebra, and integral lattices with a
//! symmetric intersection form. No floating point is used anywhere.

mod lattice;
mod matrix;

pub use lattice::{adjunction_euler, to_i64, IntersectionLattice, LatticeVector};
pub use matrix::{kernel_dimension, IntegerMatrix, RationalMatrix};

//! Exact integer linear algebra: Hermite and Smith normal forms, and a sparse
//! echelon solver for linear Diophantine systems.

mod lattice;
mod matrix;

pub use lattice::{solve_linear, solve_linear_with_kernel, EchelonLattice, SparseVec};
pub use matrix::{hermite_normal_form, invariant_factors, smith_normal_form, IntMatrix, Smith};

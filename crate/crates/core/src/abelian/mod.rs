//! Exact integer linear algebra and finitely generated abelian groups.

pub mod decimal;
mod group;
mod lattice;
mod matrix;
mod normal_form;

pub use group::{pushout, Derived, FgAbGroup, FgAbHom, Image, Pushout};
pub use lattice::{
    contains, is_sublattice, kernel_basis, lattice_index, lattice_intersection, lattice_preimage,
    lattice_sum, same_lattice, saturation, solve_in_lattice, solve_matrix, Saturation,
};
pub use matrix::{dot, ivec, IntLiteral, IntMatrix};
pub use normal_form::{hnf, hnf_basis, rank, snf, Hnf, Snf};

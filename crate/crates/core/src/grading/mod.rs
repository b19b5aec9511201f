//! Finitely generated abelian groups, their homomorphisms and automorphisms
//! stabilizing a finite set of degrees.

mod abelian;
mod autenum;
pub mod snf;

pub use abelian::{AbelianGroup, GroupElement, GroupHom};
pub use autenum::enumerate_aut_stabilizing;
pub use snf::{integer_kernel, lattice_basis, smith_normal_form, torsion_index, IntMatrix, Snf};

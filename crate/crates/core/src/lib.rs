//! Graded automorphism groups of algebras graded by finitely generated
//! abelian groups, and automorphism groups of Mori dream spaces computed
//! from their Cox rings.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`], [`poly`]: exact coefficients and sparse polynomials;
//! * [`grading`]: abelian groups, Smith normal form, automorphisms of the
//!   grading group stabilizing a finite degree set;
//! * [`graded`]: graded polynomial rings, monomial bases, ideal components;
//! * [`groebner`]: Buchberger's algorithm and the usual ideal operations;
//! * [`aut`]: matrix descriptions of graded automorphism groups;
//! * [`mds`]: GIT chambers, Veronese subalgebras and the Hopf algebra of the
//!   automorphism group of a Mori dream space;
//! * [`cli`]: problem files, result documents and the command drivers used
//!   by the `gradaut` binary.

pub mod aut;
pub mod cli;
pub mod cone;
pub mod field;
pub mod graded;
pub mod grading;
pub mod groebner;
pub mod linalg;
pub mod mds;
pub mod par;
pub mod poly;

mod error;

pub use error::{Error, Result};
pub use par::Parallelism;

/// Resource limits for the exponential parts of the pipeline.
///
/// Exceeding any limit aborts with [`Error::BudgetExceeded`]; nothing is
/// silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Budget {
    /// Maximum number of S-pairs processed in one Gröbner basis run.
    pub max_pairs: usize,
    /// Maximum total degree of an S-pair lcm.
    pub max_degree: u32,
    /// Maximum number of candidate faces in a-face enumeration.
    pub max_faces: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 200_000, max_degree: 64, max_faces: 4096 }
    }
}

/// Options threaded through every expensive operation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub budget: Budget,
    pub parallelism: Parallelism,
}

impl Options {
    pub fn sequential() -> Self {
        Options { parallelism: Parallelism::Sequential, ..Default::default() }
    }
}

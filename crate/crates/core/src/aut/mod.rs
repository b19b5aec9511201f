//! Graded automorphism groups of `R = K[T_1..T_r]/I` as unions of cosets
//! `A * B_sigma` inside `GL(n)`.
//!
//! Matrices act on columns: column `c` of `A` holds the coordinates of the
//! image of the `c`-th basis monomial. Every coset is described by an ideal in
//! its own pattern variables `T_i_j` (1-based row and column), the entries
//! allowed to be nonzero for that `sigma`.

mod equations;
mod measure;
mod quotient;
mod rep;
mod symmetry;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::field::Field;
use crate::graded::{ideal_component, Component, GradedPolyRing};
use crate::grading::{AbelianGroup, GroupElement, GroupHom};
use crate::poly::Polynomial;
use crate::{Error, Result};

pub use equations::{admissibility_equations, aut_ks, representation_matrix, stab_ideal, transporter};
pub use measure::{
    component_count, coset_dimensions, dim_bound, gamma_group, group_dimension, CosetComponents, ComponentCount,
    DimBound, Gamma,
};
pub use quotient::{quot_rep, quot_rep_by_elimination};
pub use rep::{build_rep_basis, determinant, pattern_for, permuting_matrices, Block, CosetPattern, RepBasis};
pub use symmetry::{extract_permutation_symmetries, format_gfan, SymmetryReport};

/// A graded algebra `S/I` together with its representation basis.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<F> {
    pub ring: GradedPolyRing,
    pub gens: Vec<Polynomial<F>>,
    pub rep: RepBasis,
    /// generator degrees, in block order
    pub omega_s: Vec<GroupElement>,
    /// degrees of a minimal generating set of `I`, sorted
    pub omega_i: Vec<GroupElement>,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn new(ring: GradedPolyRing, gens: Vec<Polynomial<F>>) -> Result<Self> {
        let gens: Vec<Polynomial<F>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.iter().any(|g| g.nvars() != ring.nvars()) {
            return Err(Error::ShapeMismatch("relation lives in a different number of variables".into()));
        }
        let rep = build_rep_basis(&ring)?;
        let omega_i = ring.ideal_generator_degrees(&gens)?;
        let omega_s = rep.blocks.iter().map(|b| b.degree.clone()).collect();
        Ok(GradedAlgebra { ring, gens, rep, omega_s, omega_i })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.ring.group
    }

    pub fn component(&self, w: &GroupElement) -> Result<Component<F>> {
        ideal_component(&self.ring, &self.gens, w)
    }

    /// Whether `sigma` maps the set `from` onto the set `to`.
    pub(crate) fn maps_onto(&self, sigma: &GroupHom, from: &[GroupElement], to: &[GroupElement]) -> Result<bool> {
        let img: BTreeSet<GroupElement> =
            from.iter().map(|w| sigma.apply(self.group(), w)).collect::<Result<_>>()?;
        Ok(img == to.iter().cloned().collect::<BTreeSet<_>>())
    }
}

/// One coset `A * B_sigma`: the pattern and the ideal cutting it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset<F> {
    pub pattern: CosetPattern,
    /// generators in `pattern.entries.len()` variables
    pub ideal: Vec<Polynomial<F>>,
}

impl<F: Field> Coset<F> {
    pub fn nvars(&self) -> usize {
        self.pattern.entries.len()
    }

    pub fn is_identity(&self) -> bool {
        self.pattern.is_identity()
    }

    /// The ideal in all `n^2` entries, variable `r*n + c` for entry `(r, c)`,
    /// with the entries outside the pattern as generators.
    pub fn full_ideal(&self, n: usize) -> Vec<Polynomial<F>> {
        let total = n * n;
        let map: Vec<usize> = self.pattern.entries.iter().map(|&(r, c)| r * n + c).collect();
        let inside: BTreeSet<usize> = map.iter().copied().collect();
        let mut out: Vec<Polynomial<F>> = (0..total).filter(|v| !inside.contains(v)).map(|v| Polynomial::var(total, v)).collect();
        out.extend(self.ideal.iter().map(|g| g.remap(&map, total)));
        out
    }

    /// Whether the invertible matrix `a` lies in this coset.
    pub fn contains(&self, a: &[Vec<F>], rep: &RepBasis) -> bool {
        let n = a.len();
        let index = self.pattern.entry_index();
        for (r, row) in a.iter().enumerate() {
            for (c, x) in row.iter().enumerate().take(n) {
                if !x.is_zero() && !index.contains_key(&(r, c)) {
                    return false;
                }
            }
        }
        let point: Vec<F> = self.pattern.entries.iter().map(|&(r, c)| a[r][c].clone()).collect();
        self.ideal.iter().all(|g| g.evaluate(&point).is_zero())
            && !self.pattern.block_det::<F>(rep).evaluate(&point).is_zero()
    }
}

/// A finite union of cosets describing a subgroup of `GL(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGroupDescription<F> {
    pub group: AbelianGroup,
    pub basis: RepBasis,
    /// printable names of the basis monomials
    pub labels: Vec<String>,
    /// coefficient field parameter names
    pub params: Vec<String>,
    pub cosets: Vec<Coset<F>>,
}

#[derive(Serialize)]
struct CosetSummary {
    sigma: Vec<Vec<i64>>,
    perm: Vec<usize>,
    entries: Vec<String>,
    ideal: Vec<String>,
}

impl<F: Field> MatrixGroupDescription<F> {
    pub fn n(&self) -> usize {
        self.basis.n
    }

    /// Index of the coset containing `a`, if any.
    pub fn locate(&self, a: &[Vec<F>]) -> Option<usize> {
        self.cosets.iter().position(|c| c.contains(a, &self.basis))
    }

    /// One ideal for the whole union: the product of the full coset ideals.
    pub fn combined_ideal(&self) -> Vec<Polynomial<F>> {
        let n = self.n();
        let mut acc = vec![Polynomial::one(n * n)];
        for c in &self.cosets {
            let full = c.full_ideal(n);
            let mut next = Vec::with_capacity(acc.len() * full.len());
            for a in &acc {
                for b in &full {
                    next.push(a.mul(b));
                }
            }
            acc = next;
        }
        acc
    }

    pub fn coset_ideal_strings(&self, coset: &Coset<F>) -> Vec<String> {
        let names = coset.pattern.entry_names();
        coset.ideal.iter().map(|g| g.display(&names, &self.params).to_string()).collect()
    }

    /// Human-readable listing, stable across runs.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "basis ({}): {}", self.n(), self.labels.join(", "));
        for b in &self.basis.blocks {
            let _ = writeln!(s, "block {} -> columns {}..{}", b.degree, b.offset + 1, b.offset + b.dim());
        }
        for (i, c) in self.cosets.iter().enumerate() {
            let perm: Vec<String> = c.pattern.perm.iter().map(|p| (p + 1).to_string()).collect();
            let _ = writeln!(
                s,
                "coset {}: sigma {:?}, permutation ({}){}",
                i + 1,
                c.pattern.sigma.matrix(),
                perm.join(","),
                if c.is_identity() { " [identity]" } else { "" }
            );
            let ideal = self.coset_ideal_strings(c);
            if ideal.is_empty() {
                let _ = writeln!(s, "  ideal: 0");
            }
            for g in ideal {
                let _ = writeln!(s, "  {g}");
            }
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cosets: Vec<CosetSummary> = self
            .cosets
            .iter()
            .map(|c| CosetSummary {
                sigma: c.pattern.sigma.matrix(),
                perm: c.pattern.perm.clone(),
                entries: c.pattern.entry_names(),
                ideal: self.coset_ideal_strings(c),
            })
            .collect();
        serde_json::json!({
            "n": self.n(),
            "basis": self.labels,
            "block_degrees": self.basis.blocks.iter().map(|b| b.degree.coords()).collect::<Vec<_>>(),
            "cosets": cosets,
        })
    }
}

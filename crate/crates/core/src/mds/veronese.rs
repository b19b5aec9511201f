use super::hilbert::hilbert_basis;
use crate::field::Field;
use crate::graded::GradedPolyRing;
use crate::grading::GroupElement;
use crate::groebner::{groebner_default, preimage, solve_linear};
use crate::poly::{Monomial, Polynomial};
use crate::{Options, Result};

/// `K[Y_1..Y_s] / J` presenting the Veronese subalgebra, with
/// `Y_j -> T^(mu_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeronesePresentation<F> {
    pub generators: Vec<Monomial>,
    pub relations: Vec<Polynomial<F>>,
}

impl<F: Field> VeronesePresentation<F> {
    pub fn names(&self) -> Vec<String> {
        (1..=self.generators.len()).map(|j| format!("Y{j}")).collect()
    }
}

/// The subalgebra of `S/I` formed by the components of degree in the
/// subgroup generated by `subgroup`.
pub fn veronese<F: Field>(
    ring: &GradedPolyRing,
    gens: &[Polynomial<F>],
    subgroup: &[GroupElement],
    opts: &Options,
) -> Result<VeronesePresentation<F>> {
    let hb = hilbert_basis(&ring.group, &ring.degrees, subgroup, opts.budget.max_pairs)?;
    present(ring.nvars(), gens, hb, opts)
}

pub(crate) fn present<F: Field>(
    nvars: usize,
    gens: &[Polynomial<F>],
    hb: Vec<Vec<u32>>,
    opts: &Options,
) -> Result<VeronesePresentation<F>> {
    let generators: Vec<Monomial> = hb.into_iter().map(Monomial::new).collect();
    let images: Vec<Polynomial<F>> = generators.iter().map(|m| Polynomial::monomial(m.clone(), F::one())).collect();
    if generators.is_empty() {
        return Ok(VeronesePresentation { generators, relations: Vec::new() });
    }
    let relations = preimage(&images, gens, nvars, &opts.budget)?;
    // drop generators that are polynomials in the others
    let s = solve_linear(&relations, generators.len());
    let generators: Vec<Monomial> = s.kept.iter().map(|&j| generators[j].clone()).collect();
    let relations = groebner_default(&s.gens, generators.len(), &opts.budget)?.elements();
    Ok(VeronesePresentation { generators, relations })
}

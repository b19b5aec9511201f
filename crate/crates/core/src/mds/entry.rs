use serde::Serialize;

use super::hilbert::degree_lattice;
use crate::aut::MatrixGroupDescription;
use crate::field::Field;
use crate::grading::{AbelianGroup, GroupElement};
use crate::groebner::{groebner_default, saturate};
use crate::poly::{Monomial, Polynomial};
use crate::{Error, Options, Result};

/// The grading of `O(GL(k))` by columns: `deg T_ij = u_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryGrading {
    pub columns: Vec<GroupElement>,
    pub det: GroupElement,
}

impl EntryGrading {
    pub fn k(&self) -> usize {
        self.columns.len()
    }

    /// Degree of a monomial in entries listed as `(row, col)`.
    pub fn monomial_degree(&self, group: &AbelianGroup, m: &Monomial, entries: &[(usize, usize)]) -> GroupElement {
        let coeffs: Vec<i64> = m.exps().iter().map(|&e| i64::from(e)).collect();
        let degs: Vec<GroupElement> = entries.iter().map(|&(_, c)| self.columns[c].clone()).collect();
        group.combination(&coeffs, &degs)
    }
}

pub fn entry_grading<F: Field>(desc: &MatrixGroupDescription<F>) -> EntryGrading {
    let columns = desc.basis.column_degrees();
    let det = columns.iter().fold(desc.group.zero(), |acc, u| desc.group.add(&acc, u));
    EntryGrading { columns, det }
}

/// Whether every coset generator is homogeneous in the entry grading.
pub fn check_entry_homogeneity<F: Field>(desc: &MatrixGroupDescription<F>) -> bool {
    let eg = entry_grading(desc);
    desc.cosets.iter().all(|c| {
        c.ideal.iter().all(|g| {
            let mut degs = g.terms().iter().map(|(m, _)| eg.monomial_degree(&desc.group, m, &c.pattern.entries));
            match degs.next() {
                None => true,
                Some(d) => degs.all(|e| e == d),
            }
        })
    })
}

/// Exponent vector split into positive and negative parts as a binomial
/// `x^(v+) - x^(v-)`.
fn lattice_binomial<F: Field>(v: &[i64]) -> Polynomial<F> {
    let n = v.len();
    let pos = Monomial::new(v.iter().map(|&x| x.max(0) as u32).collect());
    let neg = Monomial::new(v.iter().map(|&x| (-x).max(0) as u32).collect());
    Polynomial::from_terms(n, [(pos, F::one()), (neg, F::one().neg())])
}

/// Ideal of the characteristic quasitorus `H` in the `k^2` entries (variable
/// `r*k + c`): off-diagonal entries vanish and the diagonal satisfies the
/// lattice ideal of `ker Q`, `Q` the column degrees.
pub fn h_lattice_ideal<F: Field>(group: &AbelianGroup, eg: &EntryGrading, opts: &Options) -> Result<Vec<Polynomial<F>>> {
    let k = eg.k();
    let diag = diagonal_lattice_ideal::<F>(group, eg, opts)?;
    let total = k * k;
    let map: Vec<usize> = (0..k).map(|i| i * k + i).collect();
    let mut out: Vec<Polynomial<F>> = (0..total).filter(|v| v % (k + 1) != 0).map(|v| Polynomial::var(total, v)).collect();
    out.extend(diag.iter().map(|g| g.remap(&map, total)));
    Ok(out)
}

/// The lattice ideal of `ker Q` in `k` diagonal variables.
fn diagonal_lattice_ideal<F: Field>(group: &AbelianGroup, eg: &EntryGrading, opts: &Options) -> Result<Vec<Polynomial<F>>> {
    let k = eg.k();
    let lattice = degree_lattice(group, &eg.columns, &[]);
    let gens: Vec<Polynomial<F>> = lattice.iter().map(|v| lattice_binomial(v)).filter(|p| !p.is_zero()).collect();
    let mut prod = Polynomial::one(k);
    for i in 0..k {
        prod = prod.mul(&Polynomial::var(k, i));
    }
    if gens.is_empty() {
        return Ok(gens);
    }
    let sat = saturate(&gens, &prod, &opts.budget)?;
    Ok(groebner_default(&sat, k, &opts.budget)?.elements())
}

/// Whether the identity coset (the degree-preserving automorphisms) equals
/// `H`, both saturated by the determinant.
pub fn caut_equals_h<F: Field>(desc: &MatrixGroupDescription<F>, opts: &Options) -> Result<bool> {
    let coset = desc
        .cosets
        .iter()
        .find(|c| c.is_identity())
        .ok_or_else(|| Error::Invalid("no identity coset".into()))?;
    let m = coset.nvars();
    let det = coset.pattern.block_det::<F>(&desc.basis);
    let caut = groebner_default(&saturate(&coset.ideal, &det, &opts.budget)?, m, &opts.budget)?;
    let eg = entry_grading(desc);
    let diag = diagonal_lattice_ideal::<F>(&desc.group, &eg, opts)?;
    let index = coset.pattern.entry_index();
    let map: Vec<usize> = (0..eg.k()).map(|i| index[&(i, i)]).collect();
    let mut h: Vec<Polynomial<F>> = coset
        .pattern
        .entries
        .iter()
        .enumerate()
        .filter(|(_, (r, c))| r != c)
        .map(|(e, _)| Polynomial::var(m, e))
        .collect();
    h.extend(diag.iter().map(|g| g.remap(&map, m)));
    let h = groebner_default(&h, m, &opts.budget)?;
    Ok(h.elements() == caut.elements())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{aut_ks, stab_ideal, GradedAlgebra};
    use crate::field::Rational;
    use crate::graded::GradedPolyRing;
    use crate::grading::{enumerate_aut_stabilizing, GroupHom};
    use crate::poly::default_var_names;

    #[test]
    fn lattice_ideal_of_two_equal_weights() {
        let z = AbelianGroup::free(1);
        let eg = EntryGrading { columns: vec![z.from_coords(&[1]), z.from_coords(&[1])], det: z.from_coords(&[2]) };
        let o = Options::default();
        let diag = diagonal_lattice_ideal::<Rational>(&z, &eg, &o).unwrap();
        let shown: Vec<String> = diag.iter().map(|p| p.display(&default_var_names(2), &[]).to_string()).collect();
        assert_eq!(shown, vec!["T1 - T2"]);
        assert_eq!(h_lattice_ideal::<Rational>(&z, &eg, &o).unwrap().len(), 3);
    }

    #[test]
    fn torus_is_its_own_caut() {
        let ring = GradedPolyRing::from_columns(AbelianGroup::free(2), &[vec![1, 0], vec![0, 1]]).unwrap();
        let alg = GradedAlgebra::<Rational>::new(ring, vec![]).unwrap();
        let o = Options::default();
        let d = aut_ks(&alg, &[GroupHom::identity(alg.group())], &o).unwrap();
        assert!(check_entry_homogeneity(&d));
        assert!(caut_equals_h(&d, &o).unwrap());
    }

    #[test]
    fn quadric_caut_is_larger_than_h() {
        let cox = super::super::tests::quadric_cox();
        let alg = &cox.algebra;
        let o = Options::default();
        let sig = enumerate_aut_stabilizing(alg.group(), &alg.omega_s, o.parallelism).unwrap();
        let stab = stab_ideal(alg, &sig, &o).unwrap();
        assert!(check_entry_homogeneity(&stab));
        let eg = entry_grading(&stab);
        assert_eq!(eg.columns[2], alg.ring.degrees[2]);
        assert!(!caut_equals_h(&stab, &o).unwrap());
        // every generator of H lies in the identity coset ideal
        let h = h_lattice_ideal::<Rational>(alg.group(), &eg, &o).unwrap();
        let id = stab.cosets.iter().find(|c| c.is_identity()).unwrap();
        let hb = groebner_default(&h, 25, &o.budget).unwrap();
        assert!(id.full_ideal(5).iter().all(|g| hb.contains(g)));
    }
}

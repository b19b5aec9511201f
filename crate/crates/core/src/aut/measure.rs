use serde::Serialize;

use super::{Coset, GradedAlgebra, MatrixGroupDescription, RepBasis};
use crate::field::Field;
use crate::grading::{torsion_index, GroupHom};
use crate::groebner::{groebner_default, saturate, with_inverse};
use crate::poly::Monomial;
use crate::poly::Polynomial;
use crate::{par, Error, Options, Result};

/// The coset ideal with `1 - t * det` adjoined, in `m + 1` variables.
pub(crate) fn with_det<F: Field>(coset: &Coset<F>, rep: &RepBasis) -> Vec<Polynomial<F>> {
    let det = coset.pattern.block_det::<F>(rep);
    with_inverse(&coset.ideal, &det)
}

/// Krull dimension of each coset inside `GL(n)`; `-1` for an empty coset.
pub fn coset_dimensions<F: Field>(desc: &MatrixGroupDescription<F>, opts: &Options) -> Result<Vec<i64>> {
    par::try_map(opts.parallelism, &desc.cosets, |c| {
        let gens = with_det(c, &desc.basis);
        Ok(groebner_default(&gens, c.nvars() + 1, &opts.budget)?.dimension())
    })
}

/// Dimension of the described group: the largest coset dimension.
pub fn group_dimension<F: Field>(desc: &MatrixGroupDescription<F>, opts: &Options) -> Result<i64> {
    Ok(coset_dimensions(desc, opts)?.into_iter().max().unwrap_or(-1))
}

/// The group of degree automorphisms with a nonempty coset, with its
/// multiplication table (`table[i][j]` is the index of `e_i ∘ e_j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gamma {
    pub elements: Vec<GroupHom>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub abelian: bool,
}

impl Gamma {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Builds the multiplication table; fails if `elements` is not closed or
    /// lacks the identity.
    pub fn from_elements(group: &crate::grading::AbelianGroup, elements: Vec<GroupHom>) -> Result<Gamma> {
        let index = |h: &GroupHom| elements.iter().position(|e| e == h);
        let identity = index(&GroupHom::identity(group))
            .ok_or_else(|| Error::Invalid("the identity coset is empty".into()))?;
        let mut table = Vec::with_capacity(elements.len());
        for a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in &elements {
                let ab = a.compose(group, b)?;
                row.push(index(&ab).ok_or_else(|| Error::Invalid("nonempty cosets are not closed under composition".into()))?);
            }
            table.push(row);
        }
        let n = elements.len();
        let abelian = (0..n).all(|i| (0..n).all(|j| table[i][j] == table[j][i]));
        Ok(Gamma { elements, table, identity, abelian })
    }
}

/// Keeps the `sigma` whose coset has an invertible point.
pub fn gamma_group<F: Field>(desc: &MatrixGroupDescription<F>, opts: &Options) -> Result<Gamma> {
    let solvable = par::try_map(opts.parallelism, &desc.cosets, |c| {
        let gens = with_det(c, &desc.basis);
        Ok::<_, Error>(!groebner_default(&gens, c.nvars() + 1, &opts.budget)?.is_unit())
    })?;
    let elements = desc
        .cosets
        .iter()
        .zip(solvable)
        .filter(|(_, s)| *s)
        .map(|(c, _)| c.pattern.sigma.clone())
        .collect();
    Gamma::from_elements(&desc.group, elements)
}

/// Irreducible components of one coset, or why they could not be counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetComponents {
    pub coset: usize,
    pub count: Option<u64>,
    /// how the count was obtained, or what blocked it
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCount {
    /// `None` when some coset could not be decided
    pub total: Option<u64>,
    pub per_coset: Vec<CosetComponents>,
}

/// Counts irreducible components coset by coset.
///
/// Decided cases: the saturated ideal is zero, linear, or becomes zero after
/// repeatedly solving `u x + h = 0` for `x`, with `u` a term in variables that
/// divide the determinant (one component), or
/// every block is `1 x 1` and the ideal saturated by the product of the
/// entries is binomial, where the torus part is a coset of a diagonalizable
/// group whose component count is the torsion of `Z^m / L`, `L` spanned by
/// the binomial exponent differences.
pub fn component_count<F: Field>(desc: &MatrixGroupDescription<F>, opts: &Options) -> Result<ComponentCount> {
    let toric = desc.basis.blocks.iter().all(|b| b.dim() == 1);
    let idx: Vec<usize> = (0..desc.cosets.len()).collect();
    let per_coset = par::try_map(opts.parallelism, &idx, |&i| {
        let c = &desc.cosets[i];
        let m = c.nvars();
        let det = c.pattern.block_det::<F>(&desc.basis);
        let sat = saturate(&c.ideal, &det, &opts.budget)?;
        let gb = groebner_default(&sat, m, &opts.budget)?;
        let out = |count: Option<u64>, certificate: String| CosetComponents { coset: i, count, certificate };
        if gb.is_unit() {
            return Ok::<_, Error>(out(Some(0), "empty".into()));
        }
        let elems = gb.elements();
        if elems.iter().all(|p| p.total_degree() <= 1) {
            return Ok(out(Some(1), "linear".into()));
        }
        if toric && elems.iter().all(|p| p.len() == 2) {
            let lattice: Vec<Vec<i64>> = elems
                .iter()
                .map(|p| {
                    let (a, b) = (p.terms()[0].0.exps(), p.terms()[1].0.exps());
                    a.iter().zip(b).map(|(&x, &y)| i64::from(x) - i64::from(y)).collect()
                })
                .collect();
            let t = torsion_index(&lattice, m);
            let shown: Vec<String> = lattice.iter().map(|v| format!("{v:?}")).collect();
            return Ok(out(Some(t), format!("binomial lattice {}", shown.join(" "))));
        }
        if graph_over_units(&elems, m, &det) {
            return Ok(out(Some(1), "graph of a rational map".into()));
        }
        Ok(out(None, format!("undecided: {} nonbinomial generators", elems.iter().filter(|p| p.len() > 2).count())))
    })?;
    let total = per_coset.iter().map(|c| c.count).sum();
    Ok(ComponentCount { total, per_coset })
}

/// Whether the ideal vanishes after eliminating variables `x` from generators
/// `u x + h` with `u` a unit term. Variables dividing `det` are units on the
/// coset, so the coset is then an open part of an affine space.
fn graph_over_units<F: Field>(gens: &[Polynomial<F>], m: usize, det: &Polynomial<F>) -> bool {
    let unit: Vec<bool> = (0..m).map(|x| det.terms().iter().all(|(mo, _)| mo.exps()[x] > 0)).collect();
    let mut gens: Vec<Polynomial<F>> = gens.to_vec();
    let mut alive = vec![true; m];
    loop {
        if gens.is_empty() {
            return true;
        }
        let pick = gens.iter().enumerate().find_map(|(k, g)| {
            (0..m).filter(|&x| alive[x] && !unit[x]).find_map(|x| {
                let mut with = g.terms().iter().filter(|(mo, _)| mo.exps()[x] > 0);
                let (mo, c) = with.next()?;
                let e = mo.exps();
                let ok = with.next().is_none() && e[x] == 1 && (0..m).all(|y| y == x || e[y] == 0 || unit[y]);
                ok.then(|| {
                    let mut u = e.to_vec();
                    u[x] = 0;
                    (k, x, Polynomial::monomial(Monomial::new(u), c.clone()))
                })
            })
        });
        let Some((k, x, u)) = pick else { return false };
        let g = gens.swap_remove(k);
        let mut ux = u.clone();
        ux = ux.mul(&Polynomial::var(m, x));
        let minus_h = ux.sub(&g);
        // p = sum p_k x^k  ->  sum p_k (-h)^k u^(d-k)
        gens = gens
            .iter()
            .map(|p| {
                let d = p.terms().iter().map(|(mo, _)| mo.exps()[x]).max().unwrap_or(0);
                let mut parts: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); d as usize + 1];
                for (mo, c) in p.terms() {
                    let mut e = mo.exps().to_vec();
                    let k = std::mem::replace(&mut e[x], 0);
                    parts[k as usize].push((Monomial::new(e), c.clone()));
                }
                let mut acc = Polynomial::zero(m);
                for (k, t) in parts.into_iter().enumerate() {
                    if !t.is_empty() {
                        let part = Polynomial::from_terms(m, t);
                        acc = acc.add(&part.mul(&minus_h.pow(k as u32)).mul(&u.pow(d - k as u32)));
                    }
                }
                acc
            })
            .filter(|p| !p.is_zero())
            .collect();
        alive[x] = false;
    }
}

/// Upper bounds for the dimension of `Aut_K(R)` and, for a Cox ring, of the
/// automorphism group of the variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimBound {
    pub algebra: i64,
    pub mds: i64,
}

/// `sum (dim R_w)^2` over the generator degrees; the second bound subtracts
/// the rank of the grading group.
pub fn dim_bound<F: Field>(alg: &GradedAlgebra<F>) -> Result<DimBound> {
    let mut algebra = 0i64;
    for b in &alg.rep.blocks {
        let d = (b.dim() - alg.component(&b.degree)?.dim()) as i64;
        algebra += d * d;
    }
    Ok(DimBound { algebra, mds: algebra - alg.ring.group.free_rank() as i64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{aut_ks, stab_ideal};
    use crate::field::Rational;
    use crate::graded::GradedPolyRing;
    use crate::grading::{enumerate_aut_stabilizing, AbelianGroup};
    use crate::poly::parse_polynomial;

    fn quadric_ring() -> GradedAlgebra<Rational> {
        let s = crate::graded::tests::quadric_ring();
        let f = parse_polynomial("T1*T2 + T3^2 + T4^2", &s.names, &[]).unwrap();
        GradedAlgebra::new(s, vec![f]).unwrap()
    }

    #[test]
    fn quadric_threefold_group() {
        let alg = quadric_ring();
        let opts = Options::default();
        let sig = enumerate_aut_stabilizing(alg.group(), &alg.omega_s, opts.parallelism).unwrap();
        assert_eq!(sig.len(), 2);
        let stab = stab_ideal(&alg, &sig, &opts).unwrap();
        assert_eq!(stab.cosets.len(), 2);
        assert_eq!(group_dimension(&stab, &opts).unwrap(), 3);
        let g = gamma_group(&stab, &opts).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.abelian);
        let cc = component_count(&stab, &opts).unwrap();
        assert_eq!(cc.total, Some(4));
        assert_eq!(dim_bound(&alg).unwrap(), DimBound { algebra: 5, mds: 3 });
    }

    #[test]
    fn general_linear_groups() {
        // P^2: GL(3) has dimension 9 and one component
        let ring = GradedPolyRing::from_columns(AbelianGroup::free(1), &[vec![1], vec![1], vec![1]]).unwrap();
        let alg = GradedAlgebra::<Rational>::new(ring, vec![]).unwrap();
        let opts = Options::default();
        let d = aut_ks(&alg, &[GroupHom::identity(alg.group())], &opts).unwrap();
        assert_eq!(group_dimension(&d, &opts).unwrap(), 9);
        assert_eq!(component_count(&d, &opts).unwrap().total, Some(1));
        assert_eq!(dim_bound(&alg).unwrap().mds, 8);
    }

    #[test]
    fn graphs_over_units() {
        let names = crate::poly::default_var_names(3);
        let p = |t: &str| parse_polynomial::<Rational>(t, &names, &[]).unwrap();
        // T1 is a unit; T3 = T2^3 / T1
        assert!(graph_over_units(&[p("T2^3 - T1*T3")], 3, &p("T1*T2")));
        // neither T1 nor T3 is a unit: a cone over a conic
        assert!(!graph_over_units(&[p("T2^2 - T1*T3")], 3, &p("T2")));
        assert!(graph_over_units(&[p("T3 - T1^2"), p("T2*T3 - T1")], 3, &p("T1")));
    }
}

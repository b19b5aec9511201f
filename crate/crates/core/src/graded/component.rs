use std::collections::{BTreeSet, HashMap};

use super::GradedPolyRing;
use crate::field::Field;
use crate::grading::GroupElement;
use crate::linalg::Subspace;
use crate::poly::{Monomial, Polynomial};
use crate::Result;

/// A homogeneous component `I_w` inside `S_w`, as a row-reduced subspace of
/// coefficient vectors over the monomial basis of `S_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component<F> {
    pub degree: GroupElement,
    pub monomials: Vec<Monomial>,
    pub space: Subspace<F>,
}

impl<F: Field> Component<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Coefficient vector of `f` over the monomial basis, or `None` if `f`
    /// has a term outside it.
    pub fn vector_of(&self, f: &Polynomial<F>) -> Option<Vec<F>> {
        let index: HashMap<&Monomial, usize> = self.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![F::zero(); self.monomials.len()];
        for (m, c) in f.terms() {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn polynomial_of(&self, v: &[F]) -> Polynomial<F> {
        let n = self.monomials.first().map_or(0, |m| m.nvars());
        Polynomial::from_terms(
            n,
            self.monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.vector_of(f).is_some_and(|v| self.space.contains(&v))
    }

    /// The row-reduced basis as polynomials.
    pub fn basis(&self) -> Vec<Polynomial<F>> {
        self.space.rows.iter().map(|r| self.polynomial_of(r)).collect()
    }
}

/// `I_w` for the ideal generated by homogeneous `gens`: the span of all
/// `m * g` with `m` a monomial of degree `w - deg g`.
pub fn ideal_component<F: Field>(
    ring: &GradedPolyRing,
    gens: &[Polynomial<F>],
    w: &GroupElement,
) -> Result<Component<F>> {
    let monomials = ring.monomial_basis(w)?;
    let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = ring.degree_of(g)?;
        let rest = ring.group.sub(w, &dg);
        for m in ring.monomial_basis(&rest)? {
            let mut v = vec![F::zero(); monomials.len()];
            for (t, c) in g.terms() {
                v[index[&t.mul(&m)]] = c.clone();
            }
            rows.push(v);
        }
    }
    let space = Subspace::span(monomials.len(), rows);
    Ok(Component { degree: w.clone(), monomials, space })
}

impl GradedPolyRing {
    /// Whether `w - v` is the degree of some monomial and `v != w`.
    pub fn strictly_below(&self, v: &GroupElement, w: &GroupElement) -> Result<bool> {
        if v == w {
            return Ok(false);
        }
        Ok(!self.monomial_basis(&self.group.sub(w, v))?.is_empty())
    }

    /// The ideal generator degrees: those `w` among the generator degrees
    /// where `I_w` is not generated by lower components. Sorted.
    pub fn ideal_generator_degrees<F: Field>(&self, gens: &[Polynomial<F>]) -> Result<Vec<GroupElement>> {
        let nonzero: Vec<&Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
        let degs: Vec<GroupElement> = nonzero.iter().map(|g| self.degree_of(g)).collect::<Result<_>>()?;
        let candidates: BTreeSet<GroupElement> = degs.iter().cloned().collect();
        let mut out = Vec::new();
        for w in &candidates {
            let full = ideal_component(self, gens, w)?;
            let mut lower = Vec::new();
            for (g, d) in nonzero.iter().zip(&degs) {
                if self.strictly_below(d, w)? {
                    lower.push((*g).clone());
                }
            }
            let low = ideal_component(self, &lower, w)?;
            if low.dim() < full.dim() {
                out.push(w.clone());
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::grading::AbelianGroup;
    use crate::poly::parse_polynomial;

    fn parse(s: &GradedPolyRing, text: &str) -> Polynomial<Rational> {
        parse_polynomial(text, &s.names, &[]).unwrap()
    }

    #[test]
    fn quadric_component() {
        let s = super::super::tests::quadric_ring();
        let f = parse(&s, "T1*T2 + T3^2 + T4^2");
        let w = s.degree_of(&f).unwrap();
        let c = ideal_component(&s, std::slice::from_ref(&f), &w).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&f));
        assert_eq!(s.ideal_generator_degrees(&[f]).unwrap(), vec![w]);
        let none = ideal_component(&s, &[parse(&s, "T1*T2 + T3^2 + T4^2")], &s.degrees[0]).unwrap();
        assert_eq!(none.dim(), 0);
        assert!(s.ideal_generator_degrees::<Rational>(&[]).unwrap().is_empty());
    }

    #[test]
    fn redundant_generator_degree_is_dropped() {
        let z = GradedPolyRing::from_columns(AbelianGroup::free(1), &[vec![1], vec![1]]).unwrap();
        let f = parse(&z, "T1^2 - T2^2");
        let g = parse(&z, "T1^3 - T1*T2^2");
        let degs = z.ideal_generator_degrees(&[f.clone(), g]).unwrap();
        assert_eq!(degs, vec![z.degree_of(&f).unwrap()]);
    }
}

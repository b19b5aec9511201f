use std::cmp::Ordering;

use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// Polynomial with terms sorted descending in a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GPoly<F> {
    pub terms: Vec<(Monomial, F)>,
}

impl<F: Field> GPoly<F> {
    pub fn from_poly(p: &Polynomial<F>, order: MonomialOrder) -> Self {
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        GPoly { terms }
    }

    pub fn to_poly(&self, nvars: usize) -> Polynomial<F> {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn monic(mut self) -> Self {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.inv();
                for t in self.terms.iter_mut() {
                    t.1 = t.1.mul(&inv);
                }
            }
        }
        self
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Returns `a - c * m * g`, merged in `order`.
    pub fn sub_mul(a: &[(Monomial, F)], c: &F, m: &Monomial, g: &[(Monomial, F)], order: MonomialOrder) -> Vec<(Monomial, F)> {
        let mut out = Vec::with_capacity(a.len() + g.len());
        let mut i = 0;
        let mut gi = g.iter().map(|(n, d)| (n.mul(m), d.mul(c))).peekable();
        while i < a.len() {
            let Some(b) = gi.peek() else { break };
            match order.compare(&a[i].0, &b.0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (n, d) = gi.next().expect("peeked");
                    out.push((n, d.neg()));
                }
                Ordering::Equal => {
                    let (n, d) = gi.next().expect("peeked");
                    let v = a[i].1.sub(&d);
                    if !v.is_zero() {
                        out.push((n, v));
                    }
                    i += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(gi.map(|(n, d)| (n, d.neg())));
        out
    }
}

/// Fully reduces `p` modulo `basis` (all monic); returns the remainder.
pub(crate) fn reduce<F: Field>(p: GPoly<F>, basis: &[&GPoly<F>], order: MonomialOrder) -> GPoly<F> {
    let mut rest = p.terms;
    let mut out: Vec<(Monomial, F)> = Vec::new();
    let mut start = 0;
    while start < rest.len() {
        let (m, c) = &rest[start];
        match basis.iter().find(|g| g.lm().divides(m)) {
            Some(g) => {
                let q = m.div(g.lm()).expect("divides");
                let c = c.clone();
                // the leading terms cancel exactly; drop them first
                rest = GPoly::sub_mul(&rest[start + 1..], &c, &q, &g.terms[1..], order);
                start = 0;
            }
            None => {
                out.push(rest[start].clone());
                start += 1;
            }
        }
    }
    GPoly { terms: out }
}

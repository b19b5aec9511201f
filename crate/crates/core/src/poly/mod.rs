//! Sparse multivariate polynomials over an exact field.

mod monomial;
mod parse;

use std::collections::HashMap;
use std::fmt;

use crate::field::Field;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, ParseError};

/// Sparse polynomial in a fixed number of variables.
///
/// Terms are stored in descending graded lexicographic order with no zero
/// coefficients, which makes equality structural and printing deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            Polynomial { nvars, terms: vec![(Monomial::one(nvars), c)] }
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Polynomial { nvars, terms: vec![(Monomial::var(nvars, i), F::one())] }
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            Polynomial { nvars, terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| MonomialOrder::GrLex.compare(&b.0, &a.0));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<&(Monomial, F)> {
        self.terms.iter().max_by(|a, b| order.compare(&a.0, &b.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match MonomialOrder::GrLex.compare(&a.0, &b.0) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a.1.add(&b.1);
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m, c);
        }
        let prod = self
            .terms
            .iter()
            .flat_map(|(a, ca)| other.terms.iter().map(move |(b, cb)| (a.mul(b), ca.mul(cb))));
        Self::from_terms(self.nvars, prod)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient in the storage order.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Substitutes `images[i]` for variable `i`; all images share a target
    /// variable count.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Polynomial<F> {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: HashMap<(usize, u32), Polynomial<F>> = HashMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                t = t.mul(&p);
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Evaluates at a point.
    pub fn evaluate(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Re-indexes variables: variable `i` becomes variable `map[i]` in a ring
    /// with `nvars` variables.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Self {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; nvars];
            for (i, &x) in m.exps().iter().enumerate() {
                e[map[i]] += x;
            }
            (Monomial::new(e), c.clone())
        });
        Self::from_terms(nvars, terms)
    }

    /// Restriction to a subset of variables; `None` if some term uses a
    /// variable outside `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Option<Self> {
        let mut pos = vec![usize::MAX; self.nvars];
        for (k, &v) in keep.iter().enumerate() {
            pos[v] = k;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; keep.len()];
            for (i, &x) in m.exps().iter().enumerate() {
                if x > 0 {
                    if pos[i] == usize::MAX {
                        return None;
                    }
                    e[pos[i]] = x;
                }
            }
            terms.push((Monomial::new(e), c.clone()));
        }
        Some(Self::from_terms(keep.len(), terms))
    }

    /// Variables occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..self.nvars).filter(|&i| used[i]).collect()
    }

    /// Sets the given variables to zero.
    pub fn kill_vars(&self, vars: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&v| m.exps()[v] == 0))
            .cloned()
            .collect();
        Polynomial { nvars: self.nvars, terms }
    }

    pub fn display<'a>(&'a self, vars: &'a [String], params: &'a [String]) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, vars, params }
    }
}

/// Formats a polynomial in the plain-text grammar accepted by
/// [`parse_polynomial`].
pub struct PolyDisplay<'a, F> {
    poly: &'a Polynomial<F>,
    vars: &'a [String],
    params: &'a [String],
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = &self.poly.terms;
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let mono: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = self.vars.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let (neg, abs) = match c.to_rational() {
                Some(q) if q.is_negative() => (true, F::from_rational(&q.abs())),
                _ => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff = if abs.is_one() && !mono.is_empty() {
                None
            } else if abs.is_atomic() || mono.is_empty() && k == 0 {
                Some(abs.to_text(self.params))
            } else {
                Some(format!("({})", abs.to_text(self.params)))
            };
            match (coeff, mono.is_empty()) {
                (Some(c), true) => write!(f, "{c}")?,
                (Some(c), false) => write!(f, "{c}*{}", mono.join("*"))?,
                (None, _) => write!(f, "{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Default variable names `T1, ..., Tn`.
pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("T{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{RatFunc, Rational};

    type P = Polynomial<Rational>;

    #[test]
    fn arithmetic_and_printing() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let p = x.add(&y).pow(2);
        let names = default_var_names(2);
        assert_eq!(p.display(&names, &[]).to_string(), "T1^2 + 2*T1*T2 + T2^2");
        let q = p.sub(&x.mul(&x));
        assert_eq!(q.display(&names, &[]).to_string(), "2*T1*T2 + T2^2");
        assert_eq!(P::zero(2).display(&names, &[]).to_string(), "0");
        let c = P::constant(2, Rational::new(-3, 2));
        assert_eq!(c.display(&names, &[]).to_string(), "-3/2");
    }

    #[test]
    fn parametric_printing() {
        let a = RatFunc::parameter(0).unwrap();
        let t = Polynomial::<RatFunc>::var(1, 0);
        let p = t.scale(&a.sub(&RatFunc::one()));
        let names = default_var_names(1);
        assert_eq!(p.display(&names, &["a".into()]).to_string(), "(a - 1)*T1");
        let q = t.scale(&RatFunc::one().sub(&a));
        assert_eq!(q.display(&names, &["a".into()]).to_string(), "(-a + 1)*T1");
    }

    #[test]
    fn substitution() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let p = x.mul(&y).sub(&P::one(2));
        let s = p.substitute(&[y.clone(), x.add(&y)]);
        assert_eq!(s, y.mul(&x.add(&y)).sub(&P::one(2)));
        let v = p.evaluate(&[Rational::from(2), Rational::from(3)]);
        assert_eq!(v, Rational::from(5));
    }
}

use std::fmt;

use super::{Field, Rational};

/// Sparse multivariate polynomial over the rationals, used for the numerators
/// and denominators of parameter coefficients.
///
/// Exponent vectors are stored with trailing zeros trimmed, so polynomials in
/// different numbers of variables compare and combine without a shared
/// context. Terms are kept in descending lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: Vec<(Vec<u32>, Rational)>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

fn sub_exps(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = Vec::with_capacity(a.len());
    for i in 0..a.len() {
        let bi = b.get(i).copied().unwrap_or(0);
        if a[i] < bi {
            return None;
        }
        out.push(a[i] - bi);
    }
    Some(trim(out))
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly { terms: vec![(Vec::new(), c)] }
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        MPoly { terms: vec![(e, Rational::one())] }
    }

    fn from_terms(mut terms: Vec<(Vec<u32>, Rational)>) -> Self {
        for t in terms.iter_mut() {
            t.0 = trim(std::mem::take(&mut t.0));
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Vec<u32>, Rational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = last.1.add(&c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        MPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_empty())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(e, c)] if e.is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> &[(Vec<u32>, Rational)] {
        &self.terms
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
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
        MPoly { terms: out }
    }

    pub fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                terms.push((add_exps(ea, eb), ca.mul(cb)));
            }
        }
        Self::from_terms(terms)
    }

    fn mul_term(&self, e: &[u32], c: &Rational) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(f, d)| (trim(add_exps(f, e)), d.mul(c)))
                .collect(),
        }
    }

    /// Divides so that the leading coefficient becomes one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (de, dc) = &divisor.terms[0];
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((re, rc)) = rem.terms.first() {
            let qe = sub_exps(re, de)?;
            let qc = rc.div(dc);
            rem = rem.sub(&divisor.mul_term(&qe, &qc));
            quot.push((qe, qc));
        }
        Some(Self::from_terms(quot))
    }

    fn main_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.0.first().copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Coefficients as a polynomial in the first variable over the others.
    fn to_univariate(&self) -> Vec<MPoly> {
        let deg = self.main_degree() as usize;
        let mut parts: Vec<Vec<(Vec<u32>, Rational)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let d = e.first().copied().unwrap_or(0) as usize;
            let rest = if e.len() > 1 { e[1..].to_vec() } else { Vec::new() };
            parts[d].push((rest, c.clone()));
        }
        parts.into_iter().map(Self::from_terms).collect()
    }

    fn from_univariate(coeffs: &[MPoly]) -> Self {
        let mut terms = Vec::new();
        for (d, p) in coeffs.iter().enumerate() {
            for (e, c) in &p.terms {
                let mut full = Vec::with_capacity(e.len() + 1);
                full.push(d as u32);
                full.extend_from_slice(e);
                terms.push((full, c.clone()));
            }
        }
        Self::from_terms(terms)
    }

    fn nvars(&self) -> usize {
        self.terms.iter().map(|t| t.0.len()).max().unwrap_or(0)
    }

    /// Greatest common divisor, normalized to leading coefficient one.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        let nv = a.nvars().max(b.nvars());
        if nv <= 1 {
            return univariate_gcd(a, b);
        }
        let ua = a.to_univariate();
        let ub = b.to_univariate();
        let ca = content(&ua);
        let cb = content(&ub);
        let c = Self::gcd(&ca, &cb);
        let mut pa = primitive(&ua, &ca);
        let mut pb = primitive(&ub, &cb);
        if pa.len() < pb.len() {
            std::mem::swap(&mut pa, &mut pb);
        }
        while !(pb.len() == 1 && pb[0].is_zero()) && !pb.is_empty() {
            let r = pseudo_rem(&pa, &pb);
            pa = pb;
            pb = if r.iter().all(|x| x.is_zero()) {
                vec![Self::zero()]
            } else {
                let cr = content(&r);
                primitive(&r, &cr)
            };
        }
        let g = Self::from_univariate(&pa);
        let cg = Self::from_univariate(&[c]);
        cg.mul(&g).monic()
    }

    pub fn write(&self, f: &mut dyn fmt::Write, params: &[String]) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || e.is_empty() {
                parts.push(abs.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let name = params
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("a{}", i + 1));
                if x == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{name}^{x}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

fn trim_coeffs(mut v: Vec<MPoly>) -> Vec<MPoly> {
    while v.len() > 1 && v.last().is_some_and(|p| p.is_zero()) {
        v.pop();
    }
    v
}

fn content(coeffs: &[MPoly]) -> MPoly {
    let mut g = MPoly::zero();
    for c in coeffs {
        g = MPoly::gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn primitive(coeffs: &[MPoly], content: &MPoly) -> Vec<MPoly> {
    let v = coeffs
        .iter()
        .map(|c| c.div_exact(content).expect("content divides every coefficient"))
        .collect();
    trim_coeffs(v)
}

/// Pseudo-remainder of univariate polynomials over a polynomial ring.
fn pseudo_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut r: Vec<MPoly> = trim_coeffs(a.to_vec());
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        r = trim_coeffs(r);
        if r.len() - 1 == dr && !r[dr].is_zero() {
            unreachable!("pseudo-division did not cancel the leading coefficient");
        }
        if r.len() == 1 && db == 0 {
            break;
        }
    }
    r
}

fn univariate_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let mut x = a.monic();
    let mut y = b.monic();
    if x.main_degree() < y.main_degree() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = univariate_rem(&x, &y);
        x = y;
        y = r.monic();
    }
    x.monic()
}

fn univariate_rem(a: &MPoly, b: &MPoly) -> MPoly {
    let mut r = a.clone();
    let (be, bc) = b.terms[0].clone();
    while let Some((re, rc)) = r.terms.first().cloned() {
        match sub_exps(&re, &be) {
            Some(qe) => {
                let qc = rc.div(&bc);
                r = r.sub(&b.mul_term(&qe, &qc));
            }
            None => break,
        }
    }
    r
}

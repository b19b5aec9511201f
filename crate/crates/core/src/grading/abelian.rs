use std::fmt;

use serde::Serialize;

use super::snf::{determinant, mat_mul, smith_normal_form, unimodular_inverse, IntMatrix};
use crate::{Error, Result};

/// A finitely generated abelian group `Z^k + Z/n_1 + ... + Z/n_t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<i64>,
}

/// An element of an [`AbelianGroup`]; torsion entries are kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl GroupElement {
    /// Integer coordinates: free part followed by torsion representatives.
    pub fn coords(&self) -> Vec<i64> {
        self.free.iter().chain(&self.torsion).copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|&x| x == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .free
            .iter()
            .map(|x| x.to_string())
            .chain(self.torsion.iter().map(|x| format!("{x}bar")))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn prime_powers(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Result<Self> {
        if let Some(n) = torsion.iter().find(|&&n| n < 2) {
            return Err(Error::Invalid(format!("torsion order {n} must be at least 2")));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn free(k: usize) -> Self {
        AbelianGroup { free_rank: k, torsion: Vec::new() }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[i64] {
        &self.torsion
    }

    /// Number of integer coordinates of an element.
    pub fn width(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Exponent of the torsion part: the smallest annihilator.
    pub fn exponent(&self) -> i64 {
        self.torsion.iter().fold(1, |a, &n| lcm(a, n))
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().map(|&n| n as u64).product()
    }

    /// Isomorphic group with torsion split into prime powers, sorted.
    pub fn canonical(&self) -> AbelianGroup {
        let mut t: Vec<i64> = self.torsion.iter().flat_map(|&n| prime_powers(n)).collect();
        t.sort_unstable();
        AbelianGroup { free_rank: self.free_rank, torsion: t }
    }

    pub fn element(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<GroupElement> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(Error::ShapeMismatch(format!(
                "element has shape ({}, {}), group needs ({}, {})",
                free.len(),
                torsion.len(),
                self.free_rank,
                self.torsion.len()
            )));
        }
        Ok(self.reduce(GroupElement { free, torsion }))
    }

    /// Element from integer coordinates (free part then torsion).
    pub fn from_coords(&self, c: &[i64]) -> GroupElement {
        assert_eq!(c.len(), self.width());
        self.reduce(GroupElement {
            free: c[..self.free_rank].to_vec(),
            torsion: c[self.free_rank..].to_vec(),
        })
    }

    fn reduce(&self, mut e: GroupElement) -> GroupElement {
        for (x, &n) in e.torsion.iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(n);
        }
        e
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { free: vec![0; self.free_rank], torsion: vec![0; self.torsion.len()] }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(GroupElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(GroupElement {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a.torsion.iter().map(|x| -x).collect(),
        })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &GroupElement, k: i64) -> GroupElement {
        self.reduce(GroupElement {
            free: a.free.iter().map(|x| x * k).collect(),
            torsion: a.torsion.iter().map(|x| x * k).collect(),
        })
    }

    /// `sum_i c_i g_i`.
    pub fn combination(&self, coeffs: &[i64], gens: &[GroupElement]) -> GroupElement {
        let mut acc = self.zero();
        for (c, g) in coeffs.iter().zip(gens) {
            if *c != 0 {
                acc = self.add(&acc, &self.scale(g, *c));
            }
        }
        acc
    }

    /// All elements of the torsion subgroup, in lexicographic order.
    pub fn torsion_elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &n in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..n).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Relation matrix presenting the group as a quotient of `Z^width`:
    /// columns `n_i e_{k+i}`.
    pub fn relation_columns(&self) -> Vec<Vec<i64>> {
        (0..self.torsion.len())
            .map(|i| {
                let mut c = vec![0; self.width()];
                c[self.free_rank + i] = self.torsion[i];
                c
            })
            .collect()
    }

    /// Whether the given elements generate the group.
    pub fn generated_by(&self, gens: &[GroupElement]) -> bool {
        let w = self.width();
        let mut cols: Vec<Vec<i64>> = gens.iter().map(|g| g.coords()).collect();
        cols.extend(self.relation_columns());
        if cols.is_empty() {
            return w == 0;
        }
        let m: IntMatrix = (0..w).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let s = smith_normal_form(&m, cols.len());
        s.rank() == w && s.invariant_factors().iter().all(|&d| d == 1)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|n| format!("Z/{n}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A homomorphism `K -> K` given by an integer block matrix `[[B,0],[C,D]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupHom {
    /// free to free, `k x k`
    pub b: IntMatrix,
    /// free to torsion, `t x k`, row `i` reduced mod `n_i`
    pub c: IntMatrix,
    /// torsion to torsion, `t x t`, row `i` reduced mod `n_i`
    pub d: IntMatrix,
}

impl GroupHom {
    /// Builds a homomorphism, reducing entries and checking well-definedness:
    /// `n_j * D_ij` must vanish modulo `n_i`.
    pub fn new(group: &AbelianGroup, b: IntMatrix, c: IntMatrix, d: IntMatrix) -> Result<Self> {
        let (k, t) = (group.free_rank, group.torsion.len());
        let shape_ok = b.len() == k
            && b.iter().all(|r| r.len() == k)
            && c.len() == t
            && c.iter().all(|r| r.len() == k)
            && d.len() == t
            && d.iter().all(|r| r.len() == t);
        if !shape_ok {
            return Err(Error::ShapeMismatch("homomorphism blocks do not match the group".into()));
        }
        let n = &group.torsion;
        let c = c
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.into_iter().map(|x| x.rem_euclid(n[i])).collect())
            .collect();
        let d: IntMatrix = d
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.into_iter().map(|x| x.rem_euclid(n[i])).collect())
            .collect();
        for i in 0..t {
            for j in 0..t {
                if (n[j] * d[i][j]) % n[i] != 0 {
                    return Err(Error::Invalid(format!(
                        "torsion block entry ({i},{j}) is not well defined"
                    )));
                }
            }
        }
        Ok(GroupHom { b, c, d })
    }

    /// Builds from the full `(k+t) x (k+t)` matrix.
    pub fn from_matrix(group: &AbelianGroup, m: &[Vec<i64>]) -> Result<Self> {
        let (k, w) = (group.free_rank, group.width());
        if m.len() != w || m.iter().any(|r| r.len() != w) {
            return Err(Error::ShapeMismatch(format!("expected a {w}x{w} matrix")));
        }
        if (0..k).any(|i| m[i][k..].iter().any(|&x| x != 0)) {
            return Err(Error::Invalid("free rows must not see the torsion part".into()));
        }
        let b = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        let c = m[k..].iter().map(|r| r[..k].to_vec()).collect();
        let d = m[k..].iter().map(|r| r[k..].to_vec()).collect();
        GroupHom::new(group, b, c, d)
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        let (k, t) = (group.free_rank, group.torsion.len());
        let eye = |n: usize| (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        GroupHom { b: eye(k), c: vec![vec![0; k]; t], d: eye(t) }
    }

    /// The full block matrix.
    pub fn matrix(&self) -> IntMatrix {
        let k = self.b.len();
        let t = self.d.len();
        let mut m = vec![vec![0; k + t]; k + t];
        for i in 0..k {
            m[i][..k].copy_from_slice(&self.b[i]);
        }
        for i in 0..t {
            m[k + i][..k].copy_from_slice(&self.c[i]);
            m[k + i][k..].copy_from_slice(&self.d[i]);
        }
        m
    }

    pub fn apply(&self, group: &AbelianGroup, w: &GroupElement) -> Result<GroupElement> {
        if w.free.len() != self.b.len() || w.torsion.len() != self.d.len() {
            return Err(Error::ShapeMismatch("element does not fit the homomorphism".into()));
        }
        let free = self.b.iter().map(|r| r.iter().zip(&w.free).map(|(a, x)| a * x).sum()).collect();
        let torsion = (0..self.d.len())
            .map(|i| {
                let a: i64 = self.c[i].iter().zip(&w.free).map(|(a, x)| a * x).sum();
                let b: i64 = self.d[i].iter().zip(&w.torsion).map(|(a, x)| a * x).sum();
                a + b
            })
            .collect();
        group.element(free, torsion)
    }

    /// `self ∘ other`.
    pub fn compose(&self, group: &AbelianGroup, other: &GroupHom) -> Result<GroupHom> {
        if self.b.len() != other.b.len() || self.d.len() != other.d.len() {
            return Err(Error::ShapeMismatch("homomorphisms on different groups".into()));
        }
        let k = self.b.len();
        let t = self.d.len();
        let b = mat_mul(&self.b, &other.b, k);
        let c1 = mat_mul(&self.c, &other.b, k);
        let c2 = mat_mul(&self.d, &other.c, k);
        let c = c1
            .iter()
            .zip(&c2)
            .map(|(x, y)| x.iter().zip(y).map(|(a, b)| a + b).collect())
            .collect();
        let d = mat_mul(&self.d, &other.d, t);
        GroupHom::new(group, b, c, d)
    }

    /// Whether this is an automorphism: `B` unimodular and the torsion map
    /// bijective.
    pub fn is_automorphism(&self, group: &AbelianGroup) -> bool {
        if determinant(&self.b).abs() != 1 {
            return false;
        }
        let zero_free = vec![0; self.b.len()];
        // injective on the finite torsion part suffices
        group.torsion_elements().iter().filter(|t| t.iter().any(|&x| x != 0)).all(|t| {
            let e = GroupElement { free: zero_free.clone(), torsion: t.clone() };
            !self.apply(group, &e).expect("shapes agree").is_zero()
        })
    }

    pub fn invert(&self, group: &AbelianGroup) -> Result<GroupHom> {
        if !self.is_automorphism(group) {
            return Err(Error::Invalid("homomorphism is not invertible".into()));
        }
        let k = self.b.len();
        let t = self.d.len();
        let binv = if k == 0 { Vec::new() } else { unimodular_inverse(&self.b) };
        // D^{-1} column j: the torsion preimage of the unit vector e_j
        let elems = group.torsion_elements();
        let zero_free = vec![0; k];
        let mut dinv = vec![vec![0; t]; t];
        for j in 0..t {
            let target: Vec<i64> = (0..t).map(|i| i64::from(i == j)).collect();
            let pre = elems
                .iter()
                .find(|x| {
                    let e = GroupElement { free: zero_free.clone(), torsion: (*x).clone() };
                    self.apply(group, &e).expect("shapes agree").torsion == target
                })
                .expect("bijective torsion map");
            for i in 0..t {
                dinv[i][j] = pre[i];
            }
        }
        // C' = -D^{-1} C B^{-1}
        let cb = mat_mul(&self.c, &binv, k);
        let c = mat_mul(&dinv, &cb, k)
            .into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect())
            .collect();
        GroupHom::new(group, binv, c, dinv)
    }
}

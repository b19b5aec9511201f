//! Exact rational polyhedral cones via the double description method.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::field::{Field, Rational};
use crate::linalg;

/// A polyhedral cone in `Q^dim` kept in both descriptions.
///
/// `rays` and `lineality` generate the cone; `facets` (inequalities
/// `a.x >= 0`) and `equations` (`a.x = 0`) cut it out. All vectors are
/// primitive integer vectors, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalCone {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub lineality: Vec<Vec<i64>>,
    pub facets: Vec<Vec<i64>>,
    pub equations: Vec<Vec<i64>>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

/// Scales a rational vector to a primitive integer vector.
pub fn primitive(v: &[Rational]) -> Vec<i64> {
    let den = Rational::common_denominator(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    ints.iter()
        .map(|x| if g.is_zero() { 0 } else { (x / &g).to_i64().expect("cone entry overflows i64") })
        .collect()
}

/// Generators of `{x : a.x >= 0 for a in ineqs, a.x = 0 for a in eqs}`:
/// returns (extreme rays, lineality basis).
fn double_description(
    dim: usize,
    ineqs: &[Vec<Rational>],
    eqs: &[Vec<Rational>],
) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    // equations first: the lineality space starts as their common kernel
    let mut lin: Vec<Vec<Rational>> = if eqs.is_empty() {
        (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    } else {
        linalg::nullspace(eqs, dim)
    };
    let mut rays: Vec<Vec<Rational>> = Vec::new();
    // equations are tight everywhere; keeping them makes the rank test absolute
    let mut processed: Vec<Vec<Rational>> = eqs.to_vec();
    for a in ineqs {
        if let Some(p) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let l0 = lin.remove(p);
            let a0 = dot(a, &l0);
            let proj = |v: &Vec<Rational>| -> Vec<Rational> {
                let f = dot(a, v).div(&a0);
                v.iter().zip(&l0).map(|(x, y)| x.sub(&f.mul(y))).collect()
            };
            lin = lin.iter().map(proj).collect();
            rays = rays.iter().map(proj).collect();
            let sign = if a0.is_negative() { Rational::from(-1) } else { Rational::one() };
            rays.push(l0.iter().map(|x| x.mul(&sign)).collect());
            processed.push(a.clone());
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            processed.push(a.clone());
            continue;
        }
        let mut next: Vec<Vec<Rational>> =
            (0..rays.len()).filter(|&i| !vals[i].is_negative()).map(|i| rays[i].clone()).collect();
        let target = dim - lin.len();
        for &p in &pos {
            for &n in &neg {
                // adjacency: the constraints tight at both have rank target - 2
                let tight: Vec<Vec<Rational>> = processed
                    .iter()
                    .filter(|c| dot(c, &rays[p]).is_zero() && dot(c, &rays[n]).is_zero())
                    .cloned()
                    .collect();
                if tight.len() + 2 < target || linalg::rank(&tight) + 2 != target {
                    continue;
                }
                let v: Vec<Rational> = rays[n]
                    .iter()
                    .zip(&rays[p])
                    .map(|(x, y)| vals[p].mul(x).sub(&vals[n].mul(y)))
                    .collect();
                next.push(v);
            }
        }
        rays = next;
        processed.push(a.clone());
    }
    (rays, lin)
}

fn canonical_set(vs: impl IntoIterator<Item = Vec<i64>>) -> Vec<Vec<i64>> {
    vs.into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Canonical basis of a subspace: primitive rows of the RREF.
fn canonical_subspace(dim: usize, vs: &[Vec<Rational>]) -> Vec<Vec<i64>> {
    let s = linalg::Subspace::span(dim, vs.to_vec());
    s.rows.iter().map(|r| primitive(r)).collect()
}

trait Sign {
    fn is_positive(&self) -> bool;
}

impl Sign for Rational {
    fn is_positive(&self) -> bool {
        !self.is_zero() && !self.is_negative()
    }
}

impl RationalCone {
    fn build(dim: usize, rays: Vec<Vec<Rational>>, lin: Vec<Vec<Rational>>) -> Self {
        let lineality = canonical_subspace(dim, &lin);
        let lin_q: Vec<Vec<Rational>> = lineality.iter().map(|v| to_q(v)).collect();
        // rays modulo the lineality space, deduplicated
        let lin_sub = linalg::Subspace::span(dim, lin_q.clone());
        let rays = canonical_set(rays.iter().map(|r| primitive(&lin_sub.reduce(r))));
        // facets from the dual cone
        let gens: Vec<Vec<Rational>> = rays.iter().map(|r| to_q(r)).collect();
        let (dual_rays, dual_lin) = double_description(dim, &gens, &lin_q);
        let equations = canonical_subspace(dim, &dual_lin);
        let eq_sub = linalg::Subspace::span(dim, equations.iter().map(|v| to_q(v)).collect());
        let facets = canonical_set(dual_rays.iter().map(|r| primitive(&eq_sub.reduce(r))));
        RationalCone { dim, rays, lineality, facets, equations }
    }

    /// The cone generated by the given vectors.
    pub fn from_generators(dim: usize, gens: &[Vec<i64>]) -> Self {
        let g: Vec<Vec<Rational>> = gens.iter().map(|v| to_q(v)).collect();
        // extreme rays and lineality of cone(g) via the double dual
        let (dual_rays, dual_lin) = double_description(dim, &g, &[]);
        let (rays, lin) = double_description(dim, &dual_rays, &dual_lin);
        Self::build(dim, rays, lin)
    }

    /// The cone `{x : a.x >= 0, e.x = 0}`.
    pub fn from_inequalities(dim: usize, ineqs: &[Vec<i64>], eqs: &[Vec<i64>]) -> Self {
        let a: Vec<Vec<Rational>> = ineqs.iter().map(|v| to_q(v)).collect();
        let e: Vec<Vec<Rational>> = eqs.iter().map(|v| to_q(v)).collect();
        let (rays, lin) = double_description(dim, &a, &e);
        Self::build(dim, rays, lin)
    }

    pub fn intersect(&self, other: &RationalCone) -> RationalCone {
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        RationalCone::from_inequalities(self.dim, &ineqs, &eqs)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let dotz = |a: &Vec<i64>| -> i128 { a.iter().zip(x).map(|(p, q)| *p as i128 * *q as i128).sum() };
        self.equations.iter().all(|e| dotz(e) == 0) && self.facets.iter().all(|f| dotz(f) >= 0)
    }

    /// Whether `x` lies in the relative interior.
    pub fn relative_interior_contains(&self, x: &[i64]) -> bool {
        let dotz = |a: &Vec<i64>| -> i128 { a.iter().zip(x).map(|(p, q)| *p as i128 * *q as i128).sum() };
        self.equations.iter().all(|e| dotz(e) == 0) && self.facets.iter().all(|f| dotz(f) > 0)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    /// Image under an invertible integer matrix (row-major, acting on
    /// column vectors).
    pub fn image(&self, m: &[Vec<i64>]) -> RationalCone {
        let apply = |v: &Vec<i64>| -> Vec<i64> {
            m.iter().map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum()).collect()
        };
        let mut gens: Vec<Vec<i64>> = self.rays.iter().map(apply).collect();
        for l in &self.lineality {
            let v = apply(l);
            gens.push(v.iter().map(|x| -x).collect());
            gens.push(v);
        }
        RationalCone::from_generators(self.dim, &gens)
    }

    /// Sum of the extreme rays: a point in the relative interior when the
    /// cone is pointed.
    pub fn interior_point(&self) -> Vec<i64> {
        let mut s = vec![0i64; self.dim];
        for r in &self.rays {
            for (a, x) in s.iter_mut().zip(r) {
                *a += x;
            }
        }
        s
    }
}

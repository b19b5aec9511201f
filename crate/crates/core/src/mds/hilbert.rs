use std::collections::{BTreeSet, HashMap};

use crate::cone::RationalCone;
use crate::field::{Field, Rational};
use crate::grading::snf::{determinant, unimodular_inverse};
use crate::grading::{integer_kernel, lattice_basis, smith_normal_form, AbelianGroup, GroupElement, IntMatrix};
use crate::linalg;
use crate::{Error, Result};

/// Basis of `{nu in Z^n : sum nu_i w_i in K'}` with `K'` generated by
/// `subgroup`.
pub fn degree_lattice(group: &AbelianGroup, weights: &[GroupElement], subgroup: &[GroupElement]) -> Vec<Vec<i64>> {
    let n = weights.len();
    let w = group.width();
    let mut cols: Vec<Vec<i64>> = weights.iter().map(|x| x.coords()).collect();
    cols.extend(subgroup.iter().map(|x| x.coords()));
    cols.extend(group.relation_columns());
    if w == 0 {
        return integer_kernel(&[], n);
    }
    let m: IntMatrix = (0..w).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let kernel = integer_kernel(&m, cols.len());
    let projected: Vec<Vec<i64>> = kernel.into_iter().map(|v| v[..n].to_vec()).filter(|v| v.iter().any(|&x| x != 0)).collect();
    lattice_basis(&projected, n)
}

/// Nonnegative integer combination check is not needed here: the monoid
/// lives in the coordinate orthant, so `x - y` lies in it iff `x >= y`.
fn dominates(x: &[i64], y: &[i64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a >= b)
}

fn det_of(cols: &[&Vec<i64>]) -> i64 {
    let d = cols.len();
    let m: IntMatrix = (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    determinant(&m)
}

/// A placing triangulation of the full-dimensional pointed cone spanned by
/// `rays` in `Q^d`; simplices are sorted index sets.
fn triangulate(rays: &[Vec<i64>], d: usize) -> Vec<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut span = linalg::Subspace::<Rational>::span(d, Vec::new());
    for (i, r) in rays.iter().enumerate() {
        let q: Vec<Rational> = r.iter().map(|&x| Rational::from(x)).collect();
        if !span.contains(&q) {
            let mut vs = span.rows.clone();
            vs.push(q);
            span = linalg::Subspace::span(d, vs);
            chosen.push(i);
        }
    }
    let mut simplices = vec![chosen.clone()];
    for (i, r) in rays.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        let mut count: HashMap<Vec<usize>, usize> = HashMap::new();
        for s in &simplices {
            for k in 0..d {
                let mut f = s.clone();
                f.remove(k);
                *count.entry(f).or_default() += 1;
            }
        }
        let mut added = Vec::new();
        for s in &simplices {
            for k in 0..d {
                let mut f = s.clone();
                let apex = f.remove(k);
                if count[&f] != 1 {
                    continue;
                }
                let mut with_apex: Vec<&Vec<i64>> = f.iter().map(|&j| &rays[j]).collect();
                with_apex.push(&rays[apex]);
                let inner = det_of(&with_apex);
                with_apex.pop();
                with_apex.push(r);
                let outer = det_of(&with_apex);
                if outer != 0 && outer.signum() != inner.signum() {
                    let mut t = f.clone();
                    t.push(i);
                    t.sort_unstable();
                    added.push(t);
                }
            }
        }
        simplices.extend(added);
    }
    simplices
}

/// Lattice points `sum lambda_i g_i` with `0 <= lambda_i < 1`, nonzero.
fn parallelepiped(gens: &[&Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    let g: IntMatrix = (0..d).map(|i| gens.iter().map(|c| c[i]).collect()).collect();
    let snf = smith_normal_form(&g, d);
    let factors: Vec<i64> = (0..d).map(|i| snf.d[i][i]).collect();
    let uinv = unimodular_inverse(&snf.u);
    let gq: Vec<Vec<Rational>> = g.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
    let ginv = linalg::inverse(&gq).expect("simplicial cone");
    let mut out = Vec::new();
    let mut a = vec![0i64; d];
    loop {
        if a.iter().any(|&x| x != 0) {
            let x: Vec<i64> = (0..d).map(|i| (0..d).map(|j| uinv[i][j] * a[j]).sum()).collect();
            let lambda: Vec<Rational> = ginv
                .iter()
                .map(|row| row.iter().zip(&x).fold(Rational::from(0), |acc, (c, &v)| acc.add(&c.mul(&Rational::from(v)))))
                .collect();
            let floors: Vec<i64> = lambda.iter().map(|l| l.floor()).collect();
            let p: Vec<i64> = (0..d).map(|i| x[i] - (0..d).map(|j| g[i][j] * floors[j]).sum::<i64>()).collect();
            out.push(p);
        }
        let mut k = 0;
        while k < d {
            a[k] += 1;
            if a[k] < factors[k] {
                break;
            }
            a[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
    }
    out
}

/// The Hilbert basis of the monoid `{nu in N^n : sum nu_i w_i in K'}`.
///
/// The monoid is the intersection of the orthant with the degree lattice.
/// Its cone is triangulated; the rays and the lattice points of the
/// fundamental parallelepipeds generate it, and the irreducible elements
/// are those dominating no other generator. `limit` bounds the number of
/// parallelepiped points.
pub fn hilbert_basis(
    group: &AbelianGroup,
    weights: &[GroupElement],
    subgroup: &[GroupElement],
    limit: usize,
) -> Result<Vec<Vec<u32>>> {
    let n = weights.len();
    let mut basis = degree_lattice(group, weights, subgroup);
    let mut cone;
    loop {
        let rho = basis.len();
        if rho == 0 {
            return Ok(Vec::new());
        }
        let rows: Vec<Vec<i64>> = (0..n).map(|i| basis.iter().map(|b| b[i]).collect()).collect();
        cone = RationalCone::from_inequalities(rho, &rows, &[]);
        if !cone.is_pointed() {
            return Err(Error::NonPointedMonoid("the degree lattice meets the orthant in a line".into()));
        }
        if cone.equations.is_empty() {
            break;
        }
        // restrict to the lattice points of the linear span of the cone
        let m: IntMatrix = cone.equations.clone();
        let kernel = integer_kernel(&m, rho);
        basis = kernel
            .iter()
            .map(|k| (0..n).map(|i| k.iter().zip(&basis).map(|(c, b)| c * b[i]).sum()).collect())
            .collect();
    }
    let rho = basis.len();
    let to_orthant = |y: &[i64]| -> Vec<i64> { (0..n).map(|i| y.iter().zip(&basis).map(|(c, b)| c * b[i]).sum()).collect() };
    let mut cands: BTreeSet<Vec<i64>> = cone.rays.iter().map(|r| to_orthant(r)).collect();
    let mut seen = 0usize;
    for s in triangulate(&cone.rays, rho) {
        let gens: Vec<&Vec<i64>> = s.iter().map(|&i| &cone.rays[i]).collect();
        let volume = det_of(&gens).unsigned_abs() as usize;
        seen += volume;
        if seen > limit {
            return Err(Error::BudgetExceeded(format!("Hilbert basis candidates passed {limit}")));
        }
        cands.extend(parallelepiped(&gens, rho).iter().map(|p| to_orthant(p)));
    }
    let mut cands: Vec<Vec<i64>> = cands.into_iter().collect();
    cands.sort_by_key(|v| v.iter().sum::<i64>());
    let mut kept: Vec<Vec<i64>> = Vec::new();
    for v in cands {
        debug_assert!(v.iter().all(|&x| x >= 0));
        if !kept.iter().any(|k| dominates(&v, k)) {
            kept.push(v);
        }
    }
    let mut out: Vec<Vec<u32>> = kept.into_iter().map(|v| v.into_iter().map(|x| x as u32).collect()).collect();
    out.sort_by(|x, y| {
        let dx: u32 = x.iter().sum();
        let dy: u32 = y.iter().sum();
        dx.cmp(&dy).then_with(|| y.cmp(x))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Linear conditions cutting a lattice out of `Z^n`: `eqs . nu = 0` and
    /// `c . nu = 0 mod d` for each `(c, d)`.
    fn lattice_conditions(basis: &[Vec<i64>], n: usize) -> (Vec<Vec<i64>>, Vec<(Vec<i64>, i64)>) {
        if basis.is_empty() {
            let eqs = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
            return (eqs, Vec::new());
        }
        let m: IntMatrix = (0..n).map(|i| basis.iter().map(|b| b[i]).collect()).collect();
        let s = smith_normal_form(&m, basis.len());
        let factors = s.invariant_factors();
        let mut eqs = Vec::new();
        let mut congr = Vec::new();
        for (i, row) in s.u.iter().enumerate() {
            match factors.get(i) {
                None => eqs.push(row.clone()),
                Some(&d) if d > 1 => congr.push((row.iter().map(|x| x.rem_euclid(d)).collect(), d)),
                Some(_) => {}
            }
        }
        (eqs, congr)
    }

    /// Minimal solutions of `A x = 0`, `x >= 0` by the Contejean-Devie
    /// completion, congruences turned into equations with slack variables.
    fn contejean_devie(g: &AbelianGroup, w: &[GroupElement], sub: &[GroupElement]) -> Vec<Vec<u32>> {
        let n = w.len();
        let (eqs, congr) = lattice_conditions(&degree_lattice(g, w, sub), n);
        let width = n + congr.len();
        let mut a: Vec<Vec<i64>> = eqs.into_iter().map(|mut r| { r.resize(width, 0); r }).collect();
        for (k, (c, d)) in congr.into_iter().enumerate() {
            let mut r = c;
            r.resize(width, 0);
            r[n + k] = -d;
            a.push(r);
        }
        let image = |x: &[i64]| -> Vec<i64> { a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum()).collect() };
        let cols: Vec<Vec<i64>> = (0..width).map(|j| a.iter().map(|r| r[j]).collect()).collect();
        let mut basis: Vec<Vec<i64>> = Vec::new();
        let mut frontier: BTreeSet<Vec<i64>> = (0..width).map(|j| (0..width).map(|i| i64::from(i == j)).collect()).collect();
        while !frontier.is_empty() {
            let mut next = BTreeSet::new();
            for p in &frontier {
                let ap = image(p);
                if ap.iter().all(|&x| x == 0) {
                    basis.push(p.clone());
                    continue;
                }
                for (j, cj) in cols.iter().enumerate() {
                    if ap.iter().zip(cj).map(|(x, y)| x * y).sum::<i64>() < 0 {
                        let mut q = p.clone();
                        q[j] += 1;
                        next.insert(q);
                    }
                }
            }
            next.retain(|q| !basis.iter().any(|b| b.iter().zip(q).all(|(x, y)| x <= y)));
            frontier = next;
        }
        let mut out: Vec<Vec<u32>> = basis
            .into_iter()
            .map(|s| s[..n].iter().map(|&x| x as u32).collect::<Vec<u32>>())
            .filter(|v| v.iter().any(|&x| x > 0))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn el(g: &AbelianGroup, c: &[i64]) -> GroupElement {
        g.from_coords(c)
    }

    /// Irreducible elements of the monoid up to a box, by brute force.
    fn brute(g: &AbelianGroup, w: &[GroupElement], sub: &[GroupElement], bound: u32) -> Vec<Vec<u32>> {
        let n = w.len();
        let lattice = degree_lattice(g, w, sub);
        let member = |v: &[u32]| -> bool {
            let (eqs, congr) = lattice_conditions(&lattice, n);
            let dot = |r: &[i64]| -> i64 { r.iter().zip(v).map(|(a, &b)| a * b as i64).sum() };
            eqs.iter().all(|r| dot(r) == 0) && congr.iter().all(|(c, d)| dot(c) % d == 0)
        };
        let mut all = vec![vec![]];
        for _ in 0..n {
            all = all.into_iter().flat_map(|v: Vec<u32>| (0..=bound).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        let elems: Vec<Vec<u32>> = all.into_iter().filter(|v| v.iter().any(|&x| x > 0) && member(v)).collect();
        elems
            .iter()
            .filter(|v| {
                !elems.iter().any(|u| *u != **v && u.iter().zip(v.iter()).all(|(a, b)| a <= b) && {
                    let rest: Vec<u32> = v.iter().zip(u).map(|(a, b)| a - b).collect();
                    rest.iter().any(|&x| x > 0) && elems.contains(&rest)
                })
            })
            .cloned()
            .collect()
    }

    #[test]
    fn small_monoids() {
        let z = AbelianGroup::free(1);
        assert_eq!(hilbert_basis(&z, &[el(&z, &[1]), el(&z, &[-1])], &[], 1000).unwrap(), vec![vec![1, 1]]);
        assert_eq!(hilbert_basis(&z, &[el(&z, &[2]), el(&z, &[-3])], &[], 1000).unwrap(), vec![vec![3, 2]]);
        let t = AbelianGroup::new(0, vec![2]).unwrap();
        let b = hilbert_basis(&t, &[el(&t, &[1]), el(&t, &[1])], &[], 1000).unwrap();
        assert_eq!(b, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let even = hilbert_basis(&z, &[el(&z, &[1]), el(&z, &[1])], &[el(&z, &[2])], 1000).unwrap();
        assert_eq!(even, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn brute_force_agreement() {
        let g = AbelianGroup::new(1, vec![3]).unwrap();
        let w = [el(&g, &[1, 1]), el(&g, &[-2, 0]), el(&g, &[1, 2]), el(&g, &[0, 1])];
        let mut hb = hilbert_basis(&g, &w, &[], 10_000).unwrap();
        let mut bf = brute(&g, &w, &[], 6);
        hb.sort();
        bf.sort();
        assert_eq!(hb, bf);
    }

    proptest! {
        #[test]
        fn agrees_with_completion(cols in proptest::collection::vec((-3i64..=3, 0i64..2), 4)) {
            let g = AbelianGroup::new(1, vec![2]).unwrap();
            let w: Vec<GroupElement> = cols.iter().map(|&(a, t)| el(&g, &[a, t])).collect();
            let mut hb = hilbert_basis(&g, &w, &[], 100_000).unwrap();
            hb.sort();
            prop_assert_eq!(hb, contejean_devie(&g, &w, &[]));
        }

        #[test]
        fn basis_elements_are_irreducible(ws in proptest::collection::vec(-3i64..=3, 3)) {
            let z = AbelianGroup::free(1);
            let w: Vec<GroupElement> = ws.iter().map(|&x| el(&z, &[x])).collect();
            let hb = hilbert_basis(&z, &w, &[], 100_000).unwrap();
            for v in &hb {
                let d: i64 = v.iter().zip(&ws).map(|(&a, b)| a as i64 * b).sum();
                prop_assert_eq!(d, 0);
                for u in &hb {
                    if u != v && u.iter().zip(v).all(|(a, b)| a <= b) {
                        let rest: Vec<u32> = v.iter().zip(u).map(|(a, b)| a - b).collect();
                        prop_assert!(!hb.contains(&rest), "{:?} = {:?} + {:?}", v, u, rest);
                        let dr: i64 = rest.iter().zip(&ws).map(|(&a, b)| a as i64 * b).sum();
                        prop_assert!(dr != 0 || rest.iter().all(|&x| x == 0));
                    }
                }
            }
        }
    }
}

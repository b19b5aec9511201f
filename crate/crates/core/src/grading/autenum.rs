//! Automorphisms of the grading group stabilizing a finite degree set.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::abelian::{AbelianGroup, GroupElement, GroupHom};
use super::snf::{determinant, IntMatrix};
use crate::field::{Field, Rational};
use crate::linalg;
use crate::par::{self, Parallelism};
use crate::{Error, Result};

type Signature = (usize, usize, usize);

struct FreeData {
    /// distinct free parts
    parts: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
    sig: Vec<Signature>,
}

impl FreeData {
    fn new(omega: &[GroupElement]) -> Self {
        let mut mult: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for w in omega {
            *mult.entry(w.free.clone()).or_default() += 1;
        }
        let parts: Vec<Vec<i64>> = mult.keys().cloned().collect();
        let index: BTreeMap<Vec<i64>, usize> =
            parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let sig = parts
            .iter()
            .map(|p| {
                let sums = parts
                    .iter()
                    .filter(|q| index.contains_key(&add(p, q)))
                    .count();
                let diffs = parts
                    .iter()
                    .filter(|q| index.contains_key(&sub(p, q)))
                    .count();
                (mult[p], sums, diffs)
            })
            .collect();
        FreeData { parts, index, sig }
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

/// Greedy choice of a basis among the free parts, preferring vectors whose
/// span covers many other free parts early.
fn choose_basis(parts: &[Vec<i64>], k: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let span_count = |idx: &[usize]| -> usize {
        let vecs: Vec<Vec<Rational>> = idx.iter().map(|&i| to_q(&parts[i])).collect();
        let r = linalg::rank(&vecs);
        parts
            .iter()
            .filter(|p| {
                let mut v = vecs.clone();
                v.push(to_q(p));
                linalg::rank(&v) == r
            })
            .count()
    };
    while chosen.len() < k {
        let cur: Vec<Vec<Rational>> = chosen.iter().map(|&i| to_q(&parts[i])).collect();
        let r = chosen.len();
        let mut best: Option<(usize, usize)> = None;
        for i in 0..parts.len() {
            let mut v = cur.clone();
            v.push(to_q(&parts[i]));
            if linalg::rank(&v) != r + 1 {
                continue;
            }
            let mut idx = chosen.clone();
            idx.push(i);
            let c = span_count(&idx);
            if best.is_none_or(|(_, bc)| c > bc) {
                best = Some((i, c));
            }
        }
        match best {
            Some((i, _)) => chosen.push(i),
            None => break,
        }
    }
    chosen
}

/// Free parts newly in the span at each level, with their coordinates in
/// the chosen basis prefix.
fn level_coordinates(parts: &[Vec<i64>], basis: &[usize]) -> Vec<Vec<(usize, Vec<Rational>)>> {
    let k = basis.len();
    let mut seen = vec![false; parts.len()];
    let mut out = vec![Vec::new(); k + 1];
    for l in 0..=k {
        let cols = &basis[..l];
        let dim = parts.first().map_or(0, |p| p.len());
        let m: Vec<Vec<Rational>> =
            (0..dim).map(|r| cols.iter().map(|&c| Rational::from(parts[c][r])).collect()).collect();
        for (i, p) in parts.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let coords = if l == 0 {
                if p.iter().all(|&x| x == 0) {
                    Some(Vec::new())
                } else {
                    None
                }
            } else {
                linalg::solve(&m, &to_q(p), l)
            };
            if let Some(c) = coords {
                seen[i] = true;
                out[l].push((i, c));
            }
        }
    }
    out
}

fn image_of(coords: &[Rational], images: &[Vec<i64>], dim: usize) -> Option<Vec<i64>> {
    let mut acc = vec![Rational::zero(); dim];
    for (c, img) in coords.iter().zip(images) {
        if c.is_zero() {
            continue;
        }
        for (a, &x) in acc.iter_mut().zip(img) {
            *a = a.add(&c.mul(&Rational::from(x)));
        }
    }
    acc.iter().map(|q| q.to_i64()).collect()
}

fn free_candidates(group: &AbelianGroup, fd: &FreeData) -> Vec<IntMatrix> {
    let k = group.free_rank();
    if k == 0 {
        return vec![Vec::new()];
    }
    let basis = choose_basis(&fd.parts, k);
    if basis.len() < k {
        return Vec::new();
    }
    let levels = level_coordinates(&fd.parts, &basis);
    let mut out = Vec::new();
    let mut images: Vec<Vec<i64>> = Vec::new();
    search(fd, &basis, &levels, 1, &mut images, &mut out, k);
    out
}

fn search(
    fd: &FreeData,
    basis: &[usize],
    levels: &[Vec<(usize, Vec<Rational>)>],
    level: usize,
    images: &mut Vec<Vec<i64>>,
    out: &mut Vec<IntMatrix>,
    k: usize,
) {
    if level > k {
        if let Some(b) = solve_free_block(fd, basis, images, k) {
            out.push(b);
        }
        return;
    }
    let src = basis[level - 1];
    for (cand, part) in fd.parts.iter().enumerate() {
        if fd.sig[cand] != fd.sig[src] || images.contains(part) {
            continue;
        }
        images.push(part.clone());
        let consistent = levels[level].iter().all(|(i, coords)| {
            match image_of(coords, images, k) {
                Some(img) => fd.index.get(&img).is_some_and(|&j| fd.sig[j] == fd.sig[*i]),
                None => false,
            }
        });
        if consistent {
            search(fd, basis, levels, level + 1, images, out, k);
        }
        images.pop();
    }
}

fn solve_free_block(fd: &FreeData, basis: &[usize], images: &[Vec<i64>], k: usize) -> Option<IntMatrix> {
    // B * basis_matrix = image_matrix, row by row: basis_matrix^T b_row = image_row
    let bt: Vec<Vec<Rational>> =
        basis.iter().map(|&c| to_q(&fd.parts[c])).collect();
    let mut b = Vec::with_capacity(k);
    for r in 0..k {
        let rhs: Vec<Rational> = images.iter().map(|img| Rational::from(img[r])).collect();
        let row = linalg::solve(&bt, &rhs, k)?;
        b.push(row.iter().map(|q| q.to_i64()).collect::<Option<Vec<i64>>>()?);
    }
    if determinant(&b).abs() != 1 {
        return None;
    }
    let mut seen = HashSet::new();
    for p in &fd.parts {
        let img: Vec<i64> = b.iter().map(|row| row.iter().zip(p).map(|(a, x)| a * x).sum()).collect();
        let j = *fd.index.get(&img)?;
        if !seen.insert(j) || fd.sig[j] != fd.sig[fd.index[p]] {
            return None;
        }
    }
    Some(b)
}

/// Completes a free block `B` by all torsion blocks `C`, `D` such that the
/// resulting automorphism maps `omega` onto itself.
fn torsion_completions(group: &AbelianGroup, omega: &[GroupElement], b: &IntMatrix) -> Vec<GroupHom> {
    let k = group.free_rank();
    let n = group.torsion_orders();
    let t = n.len();
    let targets: BTreeSet<&GroupElement> = omega.iter().collect();
    let free_images: Vec<Vec<i64>> = omega
        .iter()
        .map(|w| b.iter().map(|row| row.iter().zip(&w.free).map(|(a, x)| a * x).sum()).collect())
        .collect();
    // allowed values per row entry
    let row_choices: Vec<Vec<Vec<i64>>> = (0..t)
        .map(|i| {
            let mut ranges: Vec<Vec<i64>> = vec![(0..n[i]).collect(); k];
            for &nj in n {
                let step = n[i] / gcd(n[i], nj);
                ranges.push((0..n[i]).step_by(step as usize).collect());
            }
            cartesian(&ranges)
        })
        .collect();
    let prefixes: Vec<BTreeSet<(Vec<i64>, Vec<i64>)>> = (0..=t)
        .map(|l| omega.iter().map(|w| (w.free.clone(), w.torsion[..l].to_vec())).collect())
        .collect();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut out = Vec::new();
    fill_rows(
        group, omega, b, &free_images, &row_choices, &prefixes, &targets, &mut rows, &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn fill_rows(
    group: &AbelianGroup,
    omega: &[GroupElement],
    b: &IntMatrix,
    free_images: &[Vec<i64>],
    choices: &[Vec<Vec<i64>>],
    prefixes: &[BTreeSet<(Vec<i64>, Vec<i64>)>],
    targets: &BTreeSet<&GroupElement>,
    rows: &mut Vec<Vec<i64>>,
    out: &mut Vec<GroupHom>,
) {
    let k = group.free_rank();
    let n = group.torsion_orders();
    let l = rows.len();
    if l == n.len() {
        let c: IntMatrix = rows.iter().map(|r| r[..k].to_vec()).collect();
        let d: IntMatrix = rows.iter().map(|r| r[k..].to_vec()).collect();
        let Ok(h) = GroupHom::new(group, b.clone(), c, d) else { return };
        let images: BTreeSet<GroupElement> =
            omega.iter().map(|w| h.apply(group, w).expect("shapes agree")).collect();
        if images.len() == targets.len()
            && images.iter().all(|x| targets.contains(x))
            && h.is_automorphism(group)
        {
            out.push(h);
        }
        return;
    }
    for row in &choices[l] {
        rows.push(row.clone());
        let ok = omega.iter().zip(free_images).all(|(w, fimg)| {
            let tors: Vec<i64> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let v: i64 = r[..k].iter().zip(&w.free).map(|(a, x)| a * x).sum::<i64>()
                        + r[k..].iter().zip(&w.torsion).map(|(a, x)| a * x).sum::<i64>();
                    v.rem_euclid(n[i])
                })
                .collect();
            prefixes[l + 1].contains(&(fimg.clone(), tors))
        });
        if ok {
            fill_rows(group, omega, b, free_images, choices, prefixes, targets, rows, out);
        }
        rows.pop();
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn cartesian(ranges: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for r in ranges {
        out = out
            .into_iter()
            .flat_map(|v| {
                r.iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// All automorphisms of `group` mapping the set `omega` onto itself, in
/// canonical (sorted) order.
///
/// Free blocks are found by backtracking over images of a spanning subset of
/// the distinct free parts, pruned by incidence signatures and closure of
/// the partial linear map; torsion blocks are then enumerated row by row.
pub fn enumerate_aut_stabilizing(
    group: &AbelianGroup,
    omega: &[GroupElement],
    mode: Parallelism,
) -> Result<Vec<GroupHom>> {
    let distinct: Vec<GroupElement> =
        omega.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if distinct.iter().any(|w| w.free.len() != group.free_rank() || w.torsion.len() != group.torsion_orders().len()) {
        return Err(Error::ShapeMismatch("degree does not belong to the grading group".into()));
    }
    if !group.generated_by(&distinct) {
        return Err(Error::NonEffectiveGrading(format!(
            "the degrees {} do not generate {group}",
            distinct.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")
        )));
    }
    let fd = FreeData::new(&distinct);
    let blocks = free_candidates(group, &fd);
    let found = par::map(mode, &blocks, |b| torsion_completions(group, &distinct, b));
    let mut all: Vec<GroupHom> = found.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    Ok(all)
}

//! Smith normal form and integer lattices.

pub type IntMatrix = Vec<Vec<i64>>;

type Wide = Vec<Vec<i128>>;

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len())))
            .map(|i| self.d[i][i])
            .filter(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn identity(n: usize) -> Wide {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn narrow(m: Wide) -> IntMatrix {
    m.into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).expect("SNF entry overflows i64")).collect())
        .collect()
}

fn row_op(m: &mut Wide, target: usize, src: usize, f: i128) {
    if f == 0 {
        return;
    }
    let (a, b) = if target < src {
        let (x, y) = m.split_at_mut(src);
        (&mut x[target], &y[0])
    } else {
        let (x, y) = m.split_at_mut(target);
        (&mut y[0], &x[src])
    };
    for (t, s) in a.iter_mut().zip(b.iter()) {
        *t -= f * s;
    }
}

fn col_op(m: &mut Wide, target: usize, src: usize, f: i128) {
    if f == 0 {
        return;
    }
    for r in m.iter_mut() {
        let s = r[src];
        r[target] -= f * s;
    }
}

fn swap_cols(m: &mut Wide, a: usize, b: usize) {
    for r in m.iter_mut() {
        r.swap(a, b);
    }
}

/// Smith normal form of an integer matrix: unimodular `u`, `v` with
/// `u * m * v` diagonal, nonnegative, each entry dividing the next.
pub fn smith_normal_form(m: &[Vec<i64>], ncols: usize) -> Snf {
    let nrows = m.len();
    let mut d: Wide = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u = identity(nrows);
    let mut v = identity(ncols);
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if d[i][j] != 0 && best.is_none_or(|(a, b)| d[i][j].abs() < d[a][b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let p = d[t][t];
            let mut dirty = false;
            for i in t + 1..nrows {
                let q = d[i][t].div_euclid(p);
                row_op(&mut d, i, t, q);
                row_op(&mut u, i, t, q);
                dirty |= d[i][t] != 0;
            }
            for j in t + 1..ncols {
                let q = d[t][j].div_euclid(p);
                col_op(&mut d, j, t, q);
                col_op(&mut v, j, t, q);
                dirty |= d[t][j] != 0;
            }
            if !dirty {
                // divisibility of the remaining block
                let bad = (t + 1..nrows)
                    .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                    .find(|&(i, j)| d[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        row_op(&mut d, t, i, -1);
                        row_op(&mut u, t, i, -1);
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..nrows {
                if d[i][t] != 0 && d[i][t].abs() < d[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if d[t][j] != 0 && d[t][j].abs() < d[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                d.swap(t, best.0);
                u.swap(t, best.0);
            }
            if best.1 != t {
                swap_cols(&mut d, t, best.1);
                swap_cols(&mut v, t, best.1);
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    Snf { u: narrow(u), d: narrow(d), v: narrow(v) }
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], bcols: usize) -> IntMatrix {
    a.iter()
        .map(|r| {
            (0..bcols)
                .map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum())
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Wide = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        return 1;
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflows i64")
}

/// Basis of the integer kernel `{x in Z^ncols : m x = 0}`, as vectors.
pub fn integer_kernel(m: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    if m.is_empty() {
        return (0..ncols).map(|i| (0..ncols).map(|j| i64::from(i == j)).collect()).collect();
    }
    let s = smith_normal_form(m, ncols);
    let r = s.rank();
    (r..ncols).map(|j| s.v.iter().map(|row| row[j]).collect()).collect()
}

/// A basis of the lattice spanned by the given vectors of length `dim`.
pub fn lattice_basis(gens: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    if gens.is_empty() {
        return Vec::new();
    }
    // columns are generators: m is dim x g
    let m: IntMatrix = (0..dim).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    let s = smith_normal_form(&m, gens.len());
    // m v = u^{-1} d, so the lattice is spanned by d_i * (column i of u^{-1})
    let uinv = unimodular_inverse(&s.u);
    s.invariant_factors()
        .iter()
        .enumerate()
        .map(|(i, &di)| (0..dim).map(|r| uinv[r][i] * di).collect())
        .collect()
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> IntMatrix {
    let n = m.len();
    // u m v = 1 for the SNF of a unimodular m, hence m^{-1} = v u
    let s = smith_normal_form(m, n);
    debug_assert!(s.invariant_factors().iter().all(|&x| x == 1) && s.rank() == n);
    mat_mul(&s.v, &s.u, n)
}

/// Order of the torsion subgroup of `Z^dim / span(gens)`.
pub fn torsion_index(gens: &[Vec<i64>], dim: usize) -> u64 {
    if gens.is_empty() {
        return 1;
    }
    let m: IntMatrix = (0..dim).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    smith_normal_form(&m, gens.len())
        .invariant_factors()
        .iter()
        .map(|&d| d as u64)
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &[Vec<i64>], ncols: usize) -> Snf {
        let s = smith_normal_form(m, ncols);
        let umv = mat_mul(&mat_mul(&s.u, m, ncols), &s.v, ncols);
        assert_eq!(umv, s.d);
        assert_eq!(determinant(&s.u).abs(), 1);
        assert_eq!(determinant(&s.v).abs(), 1);
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        for (i, r) in s.d.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                if i != j {
                    assert_eq!(x, 0);
                }
            }
        }
        s
    }

    #[test]
    fn small_examples() {
        assert_eq!(check(&[vec![2, 0], vec![0, 3]], 2).invariant_factors(), vec![1, 6]);
        assert_eq!(check(&[vec![1, 0], vec![0, 1]], 2).u, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(check(&[vec![4, 6]], 2).d, vec![vec![2, 0]]);
    }

    #[test]
    fn kernels_and_lattices() {
        let k = integer_kernel(&[vec![1, 1, 1]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        assert_eq!(torsion_index(&[vec![2, -2], vec![1, 1]], 2), 4);
        assert_eq!(torsion_index(&[vec![2, 0, 0]], 3), 2);
        let b = lattice_basis(&[vec![2, 4], vec![4, 8], vec![0, 3]], 2);
        assert_eq!(b.len(), 2);
        assert_eq!(determinant(&b).abs(), 6);
    }

    proptest! {
        #[test]
        fn snf_round_trip(rows in 1usize..4, cols in 1usize..4, seed in proptest::collection::vec(-9i64..10, 16)) {
            let m: IntMatrix = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            check(&m, cols);
        }
    }
}

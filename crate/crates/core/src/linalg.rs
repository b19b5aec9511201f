//! Dense linear algebra over an exact field.

use crate::field::Field;

/// Row-reduces `m` in place to reduced row echelon form and drops zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref<F: Field>(m: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv();
        if !inv.is_one() {
            for x in m[row].iter_mut().skip(col) {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, p) in r.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn nullspace<F: Field>(m: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut r = m.to_vec();
    let pivots = rref(&mut r);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = row[free].neg();
        }
        out.push(v);
    }
    out
}

/// Some solution of `m x = b`, if one exists.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F], ncols: usize) -> Option<Vec<F>> {
    let mut aug: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, if invertible.
pub fn inverse<F: Field>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let mut aug: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row-reduced description of a subspace of `F^n`, with membership and
/// complement coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    pub dim_ambient: usize,
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn span(dim_ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        let mut rows = vectors;
        let pivots = rref(&mut rows);
        Subspace { dim_ambient, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates not used as pivots; they index a basis of the quotient.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.dim_ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coefficients of the linear form `v_c - sum_r v_{pivot r} R[r][c]`
    /// for each complement coordinate `c`. They vanish exactly on the
    /// subspace.
    pub fn complement_forms(&self) -> Vec<Vec<F>> {
        self.complement()
            .into_iter()
            .map(|c| {
                let mut form = vec![F::zero(); self.dim_ambient];
                form[c] = F::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[c].is_zero() {
                        form[p] = form[p].sub(&row[c]);
                    }
                }
                form
            })
            .collect()
    }

    /// Reduces `v` modulo the subspace; the result vanishes on pivots.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn rref_and_kernel() {
        let m = vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[1, 0, 1])];
        assert_eq!(rank(&m), 2);
        let k = nullspace(&m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let s = row.iter().zip(&k[0]).fold(Rational::zero(), |a, (x, y)| a.add(&x.mul(y)));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = vec![q(&[2, 1]), q(&[1, 1])];
        let x = solve(&m, &q(&[3, 2]), 2).unwrap();
        assert_eq!(x, q(&[1, 1]));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![q(&[1, -1]), q(&[-1, 2])]);
        assert!(inverse(&[q(&[1, 2]), q(&[2, 4])]).is_none());
        assert!(solve(&[q(&[1, 1]), q(&[1, 1])], &q(&[1, 2]), 2).is_none());
    }

    #[test]
    fn complement_forms_cut_out_subspace() {
        let s = Subspace::span(3, vec![q(&[1, 1, 0])]);
        let forms = s.complement_forms();
        assert_eq!(forms.len(), 2);
        assert!(s.contains(&q(&[2, 2, 0])));
        assert!(!s.contains(&q(&[1, 0, 0])));
        let v = q(&[3, 1, 5]);
        let vals: Vec<Rational> = forms
            .iter()
            .map(|f| f.iter().zip(&v).fold(Rational::zero(), |a, (x, y)| a.add(&x.mul(y))))
            .collect();
        assert_eq!(vals, q(&[-2, 5]));
    }
}

use std::collections::HashMap;

use serde::Serialize;

use crate::field::Field;
use crate::graded::GradedPolyRing;
use crate::grading::{GroupElement, GroupHom};
use crate::poly::{Monomial, Polynomial};
use crate::{Error, Result};

/// One block of the representation: the monomial basis of `S_w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub degree: GroupElement,
    pub monomials: Vec<Monomial>,
    /// index of the first coordinate of this block
    pub offset: usize,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.dim()
    }
}

/// Monomial bases of the components `S_w`, `w` in the generator degrees,
/// concatenated. Blocks follow the first occurrence of each degree among
/// the variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepBasis {
    pub blocks: Vec<Block>,
    pub n: usize,
}

impl RepBasis {
    pub fn block_of_degree(&self, w: &GroupElement) -> Option<usize> {
        self.blocks.iter().position(|b| b.degree == *w)
    }

    pub fn block_of_column(&self, c: usize) -> usize {
        self.blocks.iter().position(|b| b.range().contains(&c)).expect("column in range")
    }

    /// Coordinate of a basis monomial.
    pub fn column_of(&self, m: &Monomial) -> Option<usize> {
        self.blocks
            .iter()
            .find_map(|b| b.monomials.iter().position(|x| x == m).map(|k| b.offset + k))
    }

    pub fn monomial(&self, c: usize) -> &Monomial {
        let b = &self.blocks[self.block_of_column(c)];
        &b.monomials[c - b.offset]
    }

    pub fn column_degrees(&self) -> Vec<GroupElement> {
        self.blocks.iter().flat_map(|b| std::iter::repeat_n(b.degree.clone(), b.dim())).collect()
    }

    /// Printable names of the basis monomials.
    pub fn labels(&self, ring: &GradedPolyRing) -> Vec<String> {
        (0..self.n)
            .map(|c| {
                Polynomial::<crate::field::Rational>::monomial(self.monomial(c).clone(), crate::field::Rational::from(1))
                    .display(&ring.names, &[])
                    .to_string()
            })
            .collect()
    }
}

/// Builds the representation basis for the generator degrees of `ring`.
pub fn build_rep_basis(ring: &GradedPolyRing) -> Result<RepBasis> {
    ring.check_effective_pointed()?;
    let mut blocks = Vec::new();
    let mut offset = 0;
    for w in ring.generator_degrees() {
        let monomials = ring.monomial_basis(&w)?;
        let d = monomials.len();
        blocks.push(Block { degree: w, monomials, offset });
        offset += d;
    }
    Ok(RepBasis { blocks, n: offset })
}

/// The support pattern of `A * B_sigma` with `A` block diagonal: columns of
/// block `i` have entries only in the rows of block `j(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetPattern {
    pub sigma: GroupHom,
    /// block `i` goes to block `target[i]`
    pub target: Vec<usize>,
    /// one-line image tuple of the permuting matrix: `e_c -> e_{perm[c]}`
    pub perm: Vec<usize>,
    /// pattern positions `(row, col)`, sorted
    pub entries: Vec<(usize, usize)>,
}

impl CosetPattern {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn entry_index(&self) -> HashMap<(usize, usize), usize> {
        self.entries.iter().enumerate().map(|(i, &e)| (e, i)).collect()
    }

    pub fn entry_names(&self) -> Vec<String> {
        self.entries.iter().map(|(r, c)| format!("T_{}_{}", r + 1, c + 1)).collect()
    }

    /// Product of the block determinants as a polynomial in the pattern
    /// variables.
    pub fn block_det<F: Field>(&self, rep: &RepBasis) -> Polynomial<F> {
        let m = self.entries.len();
        let index = self.entry_index();
        let mut acc = Polynomial::one(m);
        for (i, b) in rep.blocks.iter().enumerate() {
            let rows = rep.blocks[self.target[i]].range();
            let mat: Vec<Vec<Polynomial<F>>> = rows
                .map(|r| b.range().map(|c| Polynomial::var(m, index[&(r, c)])).collect())
                .collect();
            acc = acc.mul(&determinant(&mat, m));
        }
        acc
    }
}

/// Determinant of a square matrix of polynomials by expansion over row
/// subsets.
pub fn determinant<F: Field>(m: &[Vec<Polynomial<F>>], nvars: usize) -> Polynomial<F> {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    assert!(n < 31, "determinant too large");
    let mut dp: HashMap<u32, Polynomial<F>> = HashMap::new();
    dp.insert(0, Polynomial::one(nvars));
    for col in 0..n {
        let mut next: HashMap<u32, Polynomial<F>> = HashMap::new();
        for (mask, val) in &dp {
            for (r, row) in m.iter().enumerate() {
                if mask & (1 << r) != 0 || row[col].is_zero() {
                    continue;
                }
                let above = (mask >> (r + 1)).count_ones();
                let term = val.mul(&row[col]);
                let term = if above % 2 == 1 { term.neg() } else { term };
                let e = next.entry(mask | (1 << r)).or_insert_with(|| Polynomial::zero(nvars));
                *e = e.add(&term);
            }
        }
        next.retain(|_, v| !v.is_zero());
        dp = next;
    }
    dp.remove(&((1u32 << n) - 1)).unwrap_or_else(|| Polynomial::zero(nvars))
}

/// The canonical permuting pattern for each `sigma`.
pub fn permuting_matrices(sigmas: &[GroupHom], ring: &GradedPolyRing, rep: &RepBasis) -> Result<Vec<CosetPattern>> {
    sigmas.iter().map(|s| pattern_for(s, ring, rep)).collect()
}

pub fn pattern_for(sigma: &GroupHom, ring: &GradedPolyRing, rep: &RepBasis) -> Result<CosetPattern> {
    let mut target = Vec::with_capacity(rep.blocks.len());
    for b in &rep.blocks {
        let img = sigma.apply(&ring.group, &b.degree)?;
        let j = rep.block_of_degree(&img).ok_or_else(|| {
            Error::Invalid(format!("{img} is not a generator degree; sigma does not permute them"))
        })?;
        if rep.blocks[j].dim() != b.dim() {
            return Err(Error::BlockDimMismatch(format!(
                "block of degree {} has dimension {}, its image {} has {}",
                b.degree,
                b.dim(),
                img,
                rep.blocks[j].dim()
            )));
        }
        target.push(j);
    }
    let mut perm = vec![0; rep.n];
    let mut entries = Vec::new();
    for (i, b) in rep.blocks.iter().enumerate() {
        let tb = &rep.blocks[target[i]];
        for k in 0..b.dim() {
            perm[b.offset + k] = tb.offset + k;
        }
        for c in b.range() {
            for r in tb.range() {
                entries.push((r, c));
            }
        }
    }
    entries.sort_unstable();
    Ok(CosetPattern { sigma: sigma.clone(), target, perm, entries })
}

use std::collections::BTreeSet;

use serde::Serialize;

use super::entry::entry_grading;
use super::hilbert::{degree_lattice, hilbert_basis};
use super::veronese::present;
use super::{aut_hat_x, AutHatX, CoxInput};
use crate::aut::{determinant, gamma_group, group_dimension, Gamma, MatrixGroupDescription};
use crate::cone::RationalCone;
use crate::field::{Field, Rational};
use crate::grading::torsion_index;
use crate::groebner::{groebner_default, ideal_dimension, intersect, saturate};
use crate::linalg;
use crate::poly::{Monomial, Polynomial};
use crate::{Error, Options, Result};

/// Generators and relations of the coordinate algebra of `Aut(X)`.
///
/// Each generator `Y_j` is a degree-zero monomial in the matrix entries of
/// the union pattern and the inverse determinant `D`. Group operations are
/// available on points: a matrix in `Aut_H(X^)` maps to the values of the
/// `Y_j`, and products and inverses are taken before mapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebraPresentation<F> {
    pub k: usize,
    /// union of the coset patterns, `(row, col)`; coordinate `entries.len()`
    /// is `D`
    pub entries: Vec<(usize, usize)>,
    pub generators: Vec<Monomial>,
    pub relations: Vec<Polynomial<F>>,
}

fn det_value<F: Field>(a: &[Vec<F>]) -> F {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else { return F::zero() };
        if p != col {
            m.swap(p, col);
            det = det.neg();
        }
        let pivot = m[col][col].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&inv);
            for c in col..n {
                let v = m[col][c].mul(&f);
                m[r][c] = m[r][c].sub(&v);
            }
        }
    }
    det
}

fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(F::zero(), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))).collect())
        .collect()
}

impl<F: Field> HopfAlgebraPresentation<F> {
    pub fn names(&self) -> Vec<String> {
        (1..=self.generators.len()).map(|j| format!("Y{j}")).collect()
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.entries.iter().map(|(r, c)| format!("T_{}_{}", r + 1, c + 1)).collect();
        v.push("D".into());
        v
    }

    /// Values of the generators at an invertible matrix supported on the
    /// union pattern.
    pub fn point(&self, a: &[Vec<F>]) -> Option<Vec<F>> {
        if a.len() != self.k || a.iter().any(|r| r.len() != self.k) {
            return None;
        }
        let inside: BTreeSet<(usize, usize)> = self.entries.iter().copied().collect();
        for (r, row) in a.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() && !inside.contains(&(r, c)) {
                    return None;
                }
            }
        }
        let det = det_value(a);
        if det.is_zero() {
            return None;
        }
        let mut coords: Vec<F> = self.entries.iter().map(|&(r, c)| a[r][c].clone()).collect();
        coords.push(det.inv());
        Some(
            self.generators
                .iter()
                .map(|m| Polynomial::monomial(m.clone(), F::one()).evaluate(&coords))
                .collect(),
        )
    }

    /// Whether the image of `a` satisfies the relations.
    pub fn satisfies(&self, a: &[Vec<F>]) -> bool {
        self.point(a).is_some_and(|y| self.relations.iter().all(|g| g.evaluate(&y).is_zero()))
    }

    /// The comultiplication evaluated at `(a, b)`: the point of `a b`.
    pub fn comultiply(&self, a: &[Vec<F>], b: &[Vec<F>]) -> Option<Vec<F>> {
        self.point(&mat_mul(a, b))
    }

    /// The antipode evaluated at `a`: the point of `a^{-1}`.
    pub fn antipode(&self, a: &[Vec<F>]) -> Option<Vec<F>> {
        self.point(&linalg::inverse(a)?)
    }

    /// The counit: the point of the identity matrix.
    pub fn counit(&self) -> Option<Vec<F>> {
        let id: Vec<Vec<F>> = (0..self.k).map(|i| (0..self.k).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect();
        self.point(&id)
    }
}

/// Result of the full pipeline for `Aut(X)`.
#[derive(Clone, Debug)]
pub struct AutX<F> {
    pub hat: AutHatX<F>,
    pub gamma: Gamma,
    pub aut_hat_dimension: i64,
    /// `dim Aut_H(X^) - rank Cl(X)`
    pub dimension: i64,
    /// `None` when presenting the Hopf algebra ran over budget
    pub presentation: Option<HopfAlgebraPresentation<F>>,
    pub presentation_status: String,
    /// Krull dimension of the presented algebra
    pub presentation_dimension: Option<i64>,
    pub components: Option<u64>,
    pub component_certificate: String,
}

#[derive(Serialize)]
pub(crate) struct AutXSummary {
    pub aut_hat_dimension: i64,
    pub dimension: i64,
    pub presentation_dimension: Option<i64>,
    pub presentation_status: String,
    pub gamma_order: usize,
    pub components: Option<u64>,
    pub component_certificate: String,
    pub generators: Option<usize>,
    pub relations: Option<usize>,
}

impl<F: Field> AutX<F> {
    pub(crate) fn summary(&self) -> AutXSummary {
        AutXSummary {
            aut_hat_dimension: self.aut_hat_dimension,
            dimension: self.dimension,
            presentation_dimension: self.presentation_dimension,
            presentation_status: self.presentation_status.clone(),
            gamma_order: self.gamma.order(),
            components: self.components,
            component_certificate: self.component_certificate.clone(),
            generators: self.presentation.as_ref().map(|p| p.generators.len()),
            relations: self.presentation.as_ref().map(|p| p.relations.len()),
        }
    }
}

/// The Hopf algebra of `Aut(X)` and its invariants.
///
/// The nonempty cosets of `Aut_H(X^)` are saturated by their determinants
/// and intersected over the union of their patterns; an inverse determinant
/// `D` of degree `-sum u_j` is adjoined and the degree-zero Veronese
/// subalgebra is presented.
pub fn aut_x<F: Field>(cox: &CoxInput<F>, chamber: Option<&RationalCone>, opts: &Options) -> Result<AutX<F>> {
    let hat = aut_hat_x(cox, chamber, opts)?;
    let desc = &hat.group;
    let gamma = gamma_group(desc, opts)?;
    let aut_hat_dimension = group_dimension(desc, opts)?;
    let free_rank = cox.algebra.group().free_rank() as i64;
    let live: Vec<usize> = (0..desc.cosets.len())
        .filter(|&i| gamma.elements.contains(&desc.cosets[i].pattern.sigma))
        .collect();
    let union: Vec<(usize, usize)> = live
        .iter()
        .flat_map(|&i| desc.cosets[i].pattern.entries.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut joint: Option<Vec<Polynomial<F>>> = None;
    let u = union.len();
    for &i in &live {
        let c = &desc.cosets[i];
        let det = c.pattern.block_det::<F>(&desc.basis);
        let sat = saturate(&c.ideal, &det, &opts.budget)?;
        let map: Vec<usize> = c.pattern.entries.iter().map(|e| union.binary_search(e).expect("in union")).collect();
        let own: BTreeSet<usize> = map.iter().copied().collect();
        let mut gens: Vec<Polynomial<F>> = (0..u).filter(|v| !own.contains(v)).map(|v| Polynomial::var(u, v)).collect();
        gens.extend(sat.iter().map(|g| g.remap(&map, u)));
        joint = Some(match joint {
            None => gens,
            Some(prev) => intersect(&prev, &gens, u, &opts.budget)?,
        });
    }
    let joint = joint.unwrap_or_default();
    let (presentation, presentation_status) = match present_hopf(desc, &union, &joint, opts) {
        Ok(p) => (Some(p), "complete".to_string()),
        Err(Error::BudgetExceeded(m)) => (None, format!("budget exceeded: {m}")),
        Err(e) => return Err(e),
    };
    let presentation_dimension = match &presentation {
        Some(p) => Some(ideal_dimension(&p.relations, p.generators.len(), &opts.budget)?),
        None => None,
    };
    let (components, component_certificate) = count_components(desc, &gamma, opts)?;
    Ok(AutX {
        hat,
        gamma,
        aut_hat_dimension,
        dimension: aut_hat_dimension - free_rank,
        presentation,
        presentation_status,
        presentation_dimension,
        components,
        component_certificate,
    })
}

/// Intersected coset ideal `joint` over the `union` entries: drop the
/// entries it forces to vanish, adjoin `D` and present the degree-zero part.
fn present_hopf<F: Field>(
    desc: &MatrixGroupDescription<F>,
    union: &[(usize, usize)],
    joint: &[Polynomial<F>],
    opts: &Options,
) -> Result<HopfAlgebraPresentation<F>> {
    let u = union.len();
    let gb = groebner_default(joint, u, &opts.budget)?;
    let alive: Vec<usize> = (0..u).filter(|&e| !gb.contains(&Polynomial::var(u, e))).collect();
    let entries: Vec<(usize, usize)> = alive.iter().map(|&e| union[e]).collect();
    let m = entries.len();
    let killed: Vec<usize> = (0..u).filter(|e| !alive.contains(e)).collect();
    let k = desc.n();
    let total = m + 1;
    let mut gens: Vec<Polynomial<F>> = gb
        .elements()
        .iter()
        .map(|g| g.kill_vars(&killed))
        .filter(|g| !g.is_zero())
        .map(|g| g.restrict(&alive).expect("killed variables are gone").remap(&(0..m).collect::<Vec<_>>(), total))
        .collect();
    let matrix: Vec<Vec<Polynomial<F>>> = (0..k)
        .map(|r| {
            (0..k)
                .map(|c| match entries.binary_search(&(r, c)) {
                    Ok(e) => Polynomial::var(total, e),
                    Err(_) => Polynomial::zero(total),
                })
                .collect()
        })
        .collect();
    let det = determinant(&matrix, total);
    gens.push(Polynomial::var(total, m).mul(&det).sub(&Polynomial::one(total)));
    let eg = entry_grading(desc);
    let group = &desc.group;
    let mut weights = eg.columns.clone();
    weights.push(group.neg(&eg.det));
    let column_basis = hilbert_basis(group, &weights, &[], opts.budget.max_pairs)?;
    let hb = lift_to_entries(&column_basis, &entries, k, opts.budget.max_pairs)?;
    let vp = present(total, &gens, hb, opts)?;
    Ok(HopfAlgebraPresentation { k, entries, generators: vp.generators, relations: vp.relations })
}

/// Entries of one column share its weight, so the degree-zero monoid on the
/// entries is the preimage of the one on columns: its irreducibles are all
/// spreadings of a column irreducible over the entries of each column.
fn lift_to_entries(column_basis: &[Vec<u32>], entries: &[(usize, usize)], k: usize, limit: usize) -> Result<Vec<Vec<u32>>> {
    let u = entries.len();
    let by_column: Vec<Vec<usize>> = (0..k).map(|c| (0..u).filter(|&e| entries[e].1 == c).collect()).collect();
    let mut out = Vec::new();
    for v in column_basis {
        let mut partial = vec![vec![0u32; u + 1]];
        for (c, slots) in by_column.iter().enumerate() {
            if v[c] == 0 {
                continue;
            }
            if slots.is_empty() {
                partial.clear();
                break;
            }
            let mut next = Vec::new();
            for p in &partial {
                spread(v[c], slots, p.clone(), &mut next);
                if out.len() + next.len() > limit {
                    return Err(Error::BudgetExceeded(format!("more than {limit} degree-zero generators")));
                }
            }
            partial = next;
        }
        for mut p in partial {
            p[u] = v[k];
            out.push(p);
        }
    }
    out.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    out.dedup();
    Ok(out)
}

fn spread(n: u32, slots: &[usize], mut base: Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let Some((&first, rest)) = slots.split_first() else { return };
    if rest.is_empty() {
        base[first] += n;
        out.push(base);
        return;
    }
    for a in (0..=n).rev() {
        let mut b = base.clone();
        b[first] += a;
        spread(n - a, rest, b, out);
    }
    base.clear();
}

/// Components of `Aut(X)`: `|Gamma|` times the torsion of `ker Q / L`, with
/// `L` the binomial lattice of the identity coset, when it is toric.
fn count_components<F: Field>(
    desc: &MatrixGroupDescription<F>,
    gamma: &Gamma,
    opts: &Options,
) -> Result<(Option<u64>, String)> {
    let order = gamma.order() as u64;
    let Some(id) = desc.cosets.iter().find(|c| c.is_identity()) else {
        return Ok((None, "no identity coset".into()));
    };
    let m = id.nvars();
    let det = id.pattern.block_det::<F>(&desc.basis);
    let gb = groebner_default(&saturate(&id.ideal, &det, &opts.budget)?, m, &opts.budget)?;
    let elems = gb.elements();
    if elems.iter().all(|p| p.total_degree() <= 1) {
        return Ok((Some(order), format!("{order} cosets, connected identity coset")));
    }
    let toric = desc.basis.blocks.iter().all(|b| b.dim() == 1);
    if !toric || elems.iter().any(|p| p.len() != 2) {
        return Ok((None, "identity coset is not a binomial torus coset".into()));
    }
    let lattice: Vec<Vec<i64>> = elems
        .iter()
        .map(|p| {
            let (a, b) = (p.terms()[0].0.exps(), p.terms()[1].0.exps());
            a.iter().zip(b).map(|(&x, &y)| i64::from(x) - i64::from(y)).collect()
        })
        .collect();
    let eg = entry_grading(desc);
    let kernel = degree_lattice(&desc.group, &eg.columns, &[]);
    let rho = kernel.len();
    // coordinates of the binomial lattice in a basis of ker Q
    let cols: Vec<Vec<Rational>> = (0..m).map(|i| kernel.iter().map(|b| Rational::from(b[i])).collect()).collect();
    let mut coords = Vec::new();
    for l in &lattice {
        let rhs: Vec<Rational> = l.iter().map(|&x| Rational::from(x)).collect();
        let Some(sol) = linalg::solve(&cols, &rhs, rho) else {
            return Ok((None, "binomial lattice is not inside ker Q".into()));
        };
        let ints: Option<Vec<i64>> = sol.iter().map(|x| if x.is_integer() { x.to_i64() } else { None }).collect();
        let Some(ints) = ints else {
            return Ok((None, "binomial lattice is not inside ker Q".into()));
        };
        coords.push(ints);
    }
    let t = torsion_index(&coords, rho);
    Ok((Some(order * t), format!("{order} cosets times torsion {t} of ker Q / L")))
}

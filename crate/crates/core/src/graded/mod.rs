//! Graded polynomial rings `K[T_1..T_r]` with a degree map into a finitely
//! generated abelian group, homogeneous components and minimal presentations.

mod component;
mod presentation;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cone::RationalCone;
use crate::field::Field;
use crate::grading::{AbelianGroup, GroupElement};
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::{Error, Result};

pub use component::{ideal_component, Component};
pub use presentation::{minimalize_presentation, Presentation};

/// A polynomial ring graded by an abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPolyRing {
    pub names: Vec<String>,
    /// Names of the coefficient field parameters; empty for the rationals.
    pub params: Vec<String>,
    pub group: AbelianGroup,
    pub degrees: Vec<GroupElement>,
    /// Integer functional strictly positive on every variable degree, when
    /// the grading is pointed.
    #[serde(skip)]
    positive: Option<Vec<i64>>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn positive_functional(group: &AbelianGroup, degrees: &[GroupElement]) -> Option<Vec<i64>> {
    let k = group.free_rank();
    if degrees.iter().any(|d| d.free.iter().all(|&x| x == 0)) {
        return None;
    }
    if degrees.is_empty() {
        return Some(vec![0; k]);
    }
    let frees: Vec<Vec<i64>> = degrees.iter().map(|d| d.free.clone()).collect();
    let c = RationalCone::from_generators(k, &frees);
    if !c.is_pointed() {
        return None;
    }
    // any point in the relative interior of the dual cone
    let dual = RationalCone::from_inequalities(k, &frees, &[]);
    let u = dual.interior_point();
    frees.iter().all(|q| dot(&u, q) > 0).then_some(u)
}

impl GradedPolyRing {
    pub fn new(
        names: Vec<String>,
        params: Vec<String>,
        group: AbelianGroup,
        degrees: Vec<GroupElement>,
    ) -> Result<Self> {
        if names.len() != degrees.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} variables but {} degrees",
                names.len(),
                degrees.len()
            )));
        }
        let width_ok = degrees
            .iter()
            .all(|d| d.free.len() == group.free_rank() && d.torsion.len() == group.torsion_orders().len());
        if !width_ok {
            return Err(Error::ShapeMismatch("degree does not belong to the grading group".into()));
        }
        let distinct: BTreeSet<&String> = names.iter().chain(&params).collect();
        if distinct.len() != names.len() + params.len() {
            return Err(Error::Invalid("variable and parameter names must be distinct".into()));
        }
        let positive = positive_functional(&group, &degrees);
        Ok(GradedPolyRing { names, params, group, degrees, positive })
    }

    /// Ring with variables `T1..Tr` and degrees given by integer columns
    /// (free part then torsion representatives).
    pub fn from_columns(group: AbelianGroup, columns: &[Vec<i64>]) -> Result<Self> {
        let degrees = columns.iter().map(|c| group.from_coords(c)).collect();
        Self::new(crate::poly::default_var_names(columns.len()), Vec::new(), group, degrees)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn positive_functional(&self) -> Option<&[i64]> {
        self.positive.as_deref()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> GroupElement {
        let coeffs: Vec<i64> = m.exps().iter().map(|&e| e as i64).collect();
        self.group.combination(&coeffs, &self.degrees)
    }

    /// Common degree of all terms.
    pub fn degree_of<F: Field>(&self, f: &Polynomial<F>) -> Result<GroupElement> {
        let mut deg: Option<GroupElement> = None;
        for (m, _) in f.terms() {
            let d = self.monomial_degree(m);
            match &deg {
                None => deg = Some(d),
                Some(e) if *e != d => {
                    return Err(Error::NotHomogeneous(format!(
                        "{} has terms of degrees {e} and {d}",
                        f.display(&self.names, &self.params)
                    )))
                }
                _ => {}
            }
        }
        Ok(deg.unwrap_or_else(|| self.group.zero()))
    }

    /// Monomials of degree `w`, in descending graded lexicographic order.
    pub fn monomial_basis(&self, w: &GroupElement) -> Result<Vec<Monomial>> {
        let Some(u) = self.positive.as_ref() else {
            return Err(Error::NonPointedGrading("monomial bases need a pointed grading".into()));
        };
        let r = self.nvars();
        let target = dot(u, &w.free);
        if target < 0 {
            return Ok(Vec::new());
        }
        let weights: Vec<i64> = self.degrees.iter().map(|d| dot(u, &d.free)).collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; r];
        self.knapsack(0, target, &weights, &mut exps, w, &mut out);
        out.sort_by(|a, b| MonomialOrder::GrLex.compare(b, a));
        Ok(out)
    }

    fn knapsack(
        &self,
        i: usize,
        rem: i64,
        weights: &[i64],
        exps: &mut Vec<u32>,
        w: &GroupElement,
        out: &mut Vec<Monomial>,
    ) {
        let r = weights.len();
        if i == r {
            if rem == 0 {
                let m = Monomial::new(exps.clone());
                if self.monomial_degree(&m) == *w {
                    out.push(m);
                }
            }
            return;
        }
        if i + 1 == r {
            if rem % weights[i] == 0 {
                exps[i] = (rem / weights[i]) as u32;
                self.knapsack(r, 0, weights, exps, w, out);
                exps[i] = 0;
            }
            return;
        }
        let mut e = 0;
        while e * weights[i] <= rem {
            exps[i] = e as u32;
            self.knapsack(i + 1, rem - e * weights[i], weights, exps, w, out);
            e += 1;
        }
        exps[i] = 0;
    }

    /// Distinct variable degrees in order of first occurrence.
    pub fn generator_degrees(&self) -> Vec<GroupElement> {
        let mut seen = BTreeSet::new();
        self.degrees.iter().filter(|d| seen.insert((*d).clone())).cloned().collect()
    }

    /// Checks effectiveness and pointedness, naming a witness on failure.
    pub fn check_effective_pointed(&self) -> Result<()> {
        if !self.group.generated_by(&self.degrees) {
            return Err(Error::NonEffectiveGrading(format!(
                "the variable degrees generate a proper subgroup of {}",
                self.group
            )));
        }
        if self.positive.is_some() {
            return Ok(());
        }
        let witness = self.nonpointed_witness();
        Err(Error::NonPointedGrading(format!(
            "nonconstant monomial {} has degree 0",
            Polynomial::<crate::field::Rational>::monomial(witness, crate::field::Rational::from(1))
                .display(&self.names, &[])
        )))
    }

    /// A nonconstant monomial of degree zero; only meaningful when the
    /// grading is not pointed.
    fn nonpointed_witness(&self) -> Monomial {
        let r = self.nvars();
        let k = self.group.free_rank();
        let exponent = self.group.exponent();
        let ord = exponent as u32;
        if let Some(i) = self.degrees.iter().position(|d| d.free.iter().all(|&x| x == 0)) {
            let mut e = vec![0; r];
            e[i] = ord;
            return Monomial::new(e);
        }
        let units: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let rows: Vec<Vec<i64>> = (0..k).map(|i| self.degrees.iter().map(|d| d.free[i]).collect()).collect();
        let c = RationalCone::from_inequalities(r, &units, &rows);
        let v = c
            .rays
            .first()
            .cloned()
            .or_else(|| c.lineality.first().map(|l| l.iter().map(|x| x.abs()).collect()))
            .unwrap_or_else(|| vec![0; r]);
        Monomial::new(v.iter().map(|&x| (x.unsigned_abs() as u32) * ord).collect())
    }
}

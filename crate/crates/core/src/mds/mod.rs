//! Mori dream spaces given by their Cox ring: the GIT chamber of an ample
//! class, the stabilizer of the chamber among the degree automorphisms, and
//! the Hopf algebra of the automorphism group.

mod autx;
mod entry;
mod hilbert;
mod veronese;

use serde::Serialize;

use crate::aut::{quot_rep, stab_ideal, GradedAlgebra, MatrixGroupDescription};
use crate::cone::RationalCone;
use crate::field::Field;
use crate::grading::{enumerate_aut_stabilizing, GroupElement, GroupHom};
use crate::groebner::{is_solvable, with_inverse};
use crate::poly::Polynomial;
use crate::{par, Error, Options, Result};

pub use autx::{aut_x, AutX, HopfAlgebraPresentation};
pub use entry::{caut_equals_h, check_entry_homogeneity, entry_grading, h_lattice_ideal, EntryGrading};
pub use hilbert::{degree_lattice, hilbert_basis};
pub use veronese::{veronese, VeronesePresentation};

/// A Cox ring together with an ample class.
#[derive(Clone, Debug)]
pub struct CoxInput<F> {
    pub algebra: GradedAlgebra<F>,
    pub ample: GroupElement,
}

impl<F: Field> CoxInput<F> {
    pub fn new(algebra: GradedAlgebra<F>, ample: GroupElement) -> Result<Self> {
        let k = algebra.group().free_rank();
        if ample.free.len() != k || ample.torsion.len() != algebra.group().torsion_orders().len() {
            return Err(Error::ShapeMismatch("ample class does not belong to the grading group".into()));
        }
        if ample.free.iter().all(|&x| x == 0) {
            return Err(Error::Invalid("ample class has zero free part".into()));
        }
        let frees: Vec<Vec<i64>> = algebra.ring.degrees.iter().map(|d| d.free.clone()).collect();
        if !RationalCone::from_generators(k, &frees).contains(&ample.free) {
            return Err(Error::EmptyChamber(format!("{ample} is outside the cone of the variable degrees")));
        }
        Ok(CoxInput { algebra, ample })
    }
}

/// A relevant face of the orthant: `gamma` (0-based, sorted) and its orbit
/// cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AFace {
    pub gamma: Vec<usize>,
    pub orbit_cone: RationalCone,
}

/// Whether `V(I)` meets the torus orbit whose support is exactly `gamma`.
pub fn is_a_face<F: Field>(gamma: &[usize], gens: &[Polynomial<F>], nvars: usize, opts: &Options) -> Result<bool> {
    let outside: Vec<usize> = (0..nvars).filter(|i| !gamma.contains(i)).collect();
    let restricted: Vec<Polynomial<F>> = gens.iter().map(|g| g.kill_vars(&outside)).filter(|g| !g.is_zero()).collect();
    let mut prod = Polynomial::one(nvars);
    for &i in gamma {
        prod = prod.mul(&Polynomial::var(nvars, i));
    }
    is_solvable(&with_inverse(&restricted, &prod), nvars + 1, &opts.budget)
}

/// The orbit cone of `gamma`: the cone over the free parts of its degrees.
pub fn orbit_cone<F: Field>(alg: &GradedAlgebra<F>, gamma: &[usize]) -> RationalCone {
    let frees: Vec<Vec<i64>> = gamma.iter().map(|&i| alg.ring.degrees[i].free.clone()).collect();
    RationalCone::from_generators(alg.group().free_rank(), &frees)
}

/// All a-faces whose orbit cone contains `w`.
pub fn a_faces_containing<F: Field>(alg: &GradedAlgebra<F>, w: &[i64], opts: &Options) -> Result<Vec<AFace>> {
    let r = alg.ring.nvars();
    let count = 1usize.checked_shl(r as u32).filter(|&c| r < usize::BITS as usize && c <= opts.budget.max_faces);
    let Some(count) = count else {
        return Err(Error::BudgetExceeded(format!(
            "2^{r} candidate faces exceed the limit of {}",
            opts.budget.max_faces
        )));
    };
    let masks: Vec<usize> = (0..count).collect();
    let candidates: Vec<Option<AFace>> = par::map(opts.parallelism, &masks, |&mask| {
        let gamma: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let cone = orbit_cone(alg, &gamma);
        cone.contains(w).then_some(AFace { gamma, orbit_cone: cone })
    });
    let candidates: Vec<AFace> = candidates.into_iter().flatten().collect();
    let verdicts = par::try_map(opts.parallelism, &candidates, |f| is_a_face(&f.gamma, &alg.gens, r, opts))?;
    Ok(candidates.into_iter().zip(verdicts).filter(|(_, ok)| *ok).map(|(f, _)| f).collect())
}

/// The GIT chamber `lambda(w)`: the intersection of the orbit cones of all
/// a-faces containing the ample class. A supplied chamber is trusted and
/// returned after checking it contains `w`.
pub fn git_cone<F: Field>(cox: &CoxInput<F>, chamber: Option<&RationalCone>, opts: &Options) -> Result<RationalCone> {
    let w = &cox.ample.free;
    if let Some(c) = chamber {
        if c.dim != w.len() {
            return Err(Error::ShapeMismatch("chamber lives in the wrong dimension".into()));
        }
        if !c.contains(w) {
            return Err(Error::EmptyChamber(format!("the supplied chamber does not contain {}", cox.ample)));
        }
        return Ok(c.clone());
    }
    let faces = a_faces_containing(&cox.algebra, w, opts)?;
    let mut it = faces.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::EmptyChamber(format!("{} lies in no orbit cone", cox.ample)))?;
    Ok(it.fold(first.orbit_cone, |acc, f| acc.intersect(&f.orbit_cone)))
}

/// The degree automorphisms whose free part maps `lambda` onto itself.
pub fn sigma_of_lambda(lambda: &RationalCone, auts: &[GroupHom]) -> Vec<GroupHom> {
    auts.iter().filter(|h| lambda.image(&h.b) == *lambda).cloned().collect()
}

/// `Aut_H(X^)` inside `GL(k)`, together with the chamber and `Sigma`.
#[derive(Clone, Debug)]
pub struct AutHatX<F> {
    pub chamber: RationalCone,
    pub aut_omega: Vec<GroupHom>,
    pub sigma: Vec<GroupHom>,
    pub group: MatrixGroupDescription<F>,
}

pub fn aut_hat_x<F: Field>(cox: &CoxInput<F>, chamber: Option<&RationalCone>, opts: &Options) -> Result<AutHatX<F>> {
    let alg = &cox.algebra;
    let lambda = git_cone(cox, chamber, opts)?;
    let aut_omega = enumerate_aut_stabilizing(alg.group(), &alg.omega_s, opts.parallelism)?;
    let sigma = sigma_of_lambda(&lambda, &aut_omega);
    let stab = stab_ideal(alg, &sigma, opts)?;
    let group = quot_rep(alg, &stab, opts)?;
    Ok(AutHatX { chamber: lambda, aut_omega, sigma, group })
}

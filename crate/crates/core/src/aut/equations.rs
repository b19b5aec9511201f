use std::collections::{BTreeMap, HashMap, HashSet};

use super::rep::{pattern_for, CosetPattern, RepBasis};
use super::{Coset, GradedAlgebra, MatrixGroupDescription};
use crate::field::Field;
use crate::graded::{ideal_component, Component, GradedPolyRing};
use crate::grading::{GroupElement, GroupHom};
use crate::poly::{Monomial, Polynomial};
use crate::{par, Error, Options, Result};

/// Column `c` of the pattern matrix as a polynomial in `m + r` variables:
/// `sum_row x_(row,c) * T^(basis monomial of row)`.
struct ColumnPolys<F> {
    m: usize,
    r: usize,
    cols: Vec<Polynomial<F>>,
}

impl<F: Field> ColumnPolys<F> {
    fn new(rep: &RepBasis, entries: &[(usize, usize)], r: usize) -> Self {
        let m = entries.len();
        let mut terms: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); rep.n];
        for (idx, &(row, col)) in entries.iter().enumerate() {
            let mut e = vec![0; m + r];
            e[idx] = 1;
            e[m..].copy_from_slice(rep.monomial(row).exps());
            terms[col].push((Monomial::new(e), F::one()));
        }
        let cols = terms.into_iter().map(|t| Polynomial::from_terms(m + r, t)).collect();
        ColumnPolys { m, r, cols }
    }

    /// Images of the variables `T_l` under the substitution.
    fn variable_images(&self, rep: &RepBasis) -> Vec<Polynomial<F>> {
        (0..self.r)
            .map(|l| {
                let c = rep.column_of(&Monomial::var(self.r, l)).expect("variables are basis monomials");
                self.cols[c].clone()
            })
            .collect()
    }
}

/// Splits a polynomial in `m + r` variables by its `T` part.
fn split_by_tail<F: Field>(p: &Polynomial<F>, m: usize) -> BTreeMap<Vec<u32>, Polynomial<F>> {
    let mut parts: BTreeMap<Vec<u32>, Vec<(Monomial, F)>> = BTreeMap::new();
    for (mon, c) in p.terms() {
        let (head, tail) = mon.exps().split_at(m);
        parts.entry(tail.to_vec()).or_default().push((Monomial::new(head.to_vec()), c.clone()));
    }
    parts.into_iter().map(|(k, t)| (k, Polynomial::from_terms(m, t))).collect()
}

fn push_equation<F: Field>(out: &mut Vec<Polynomial<F>>, seen: &mut HashSet<Vec<(Monomial, F)>>, p: Polynomial<F>) {
    if p.is_zero() {
        return;
    }
    let p = p.monic();
    if seen.insert(p.terms().to_vec()) {
        out.push(p);
    }
}

/// Equations `A(b_c b_d) = A(b_c) A(b_d)` whenever the product of two basis
/// monomials is again a basis monomial; in the pattern variables.
fn admissibility_for<F: Field>(rep: &RepBasis, entries: &[(usize, usize)], r: usize) -> Vec<Polynomial<F>> {
    let cp = ColumnPolys::<F>::new(rep, entries, r);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for c1 in 0..rep.n {
        for c2 in c1..rep.n {
            let prod = rep.monomial(c1).mul(rep.monomial(c2));
            let Some(g) = rep.column_of(&prod) else { continue };
            let diff = cp.cols[g].sub(&cp.cols[c1].mul(&cp.cols[c2]));
            for (_, eq) in split_by_tail(&diff, cp.m) {
                push_equation(&mut out, &mut seen, eq);
            }
        }
    }
    out
}

/// Admissibility equations for a general `n x n` matrix; variable
/// `r*n + c` stands for entry `(r, c)`.
pub fn admissibility_equations<F: Field>(ring: &GradedPolyRing, rep: &RepBasis) -> Vec<Polynomial<F>> {
    let entries: Vec<(usize, usize)> = (0..rep.n).flat_map(|r| (0..rep.n).map(move |c| (r, c))).collect();
    admissibility_for(rep, &entries, ring.nvars())
}

/// The `sigma` to consider: those mapping `from` onto `to`.
fn filtered<F: Field>(alg: &GradedAlgebra<F>, sigmas: &[GroupHom], from: &[GroupElement], to: &[GroupElement]) -> Result<Vec<GroupHom>> {
    let mut out = Vec::new();
    for s in sigmas {
        if alg.maps_onto(s, from, to)? {
            out.push(s.clone());
        }
    }
    Ok(out)
}

fn describe<F: Field>(alg: &GradedAlgebra<F>, cosets: Vec<Coset<F>>) -> MatrixGroupDescription<F> {
    MatrixGroupDescription {
        group: alg.ring.group.clone(),
        basis: alg.rep.clone(),
        labels: alg.rep.labels(&alg.ring),
        params: alg.ring.params.clone(),
        cosets,
    }
}

/// Graded automorphisms of the free algebra `S`, one coset per `sigma`.
pub fn aut_ks<F: Field>(alg: &GradedAlgebra<F>, sigmas: &[GroupHom], opts: &Options) -> Result<MatrixGroupDescription<F>> {
    let r = alg.ring.nvars();
    let cosets = par::try_map(opts.parallelism, sigmas, |s| {
        let pattern = pattern_for(s, &alg.ring, &alg.rep)?;
        let ideal = admissibility_for(&alg.rep, &pattern.entries, r);
        Ok::<_, Error>(Coset { pattern, ideal })
    })?;
    Ok(describe(alg, cosets))
}

/// Graded automorphisms of `S` mapping `I` into itself.
pub fn stab_ideal<F: Field>(alg: &GradedAlgebra<F>, sigmas: &[GroupHom], opts: &Options) -> Result<MatrixGroupDescription<F>> {
    transporter(alg, &alg.gens, sigmas, opts)
}

/// Graded automorphisms of `S` mapping `I` (the ideal of `alg`) into the
/// ideal generated by `target`.
pub fn transporter<F: Field>(
    alg: &GradedAlgebra<F>,
    target: &[Polynomial<F>],
    sigmas: &[GroupHom],
    opts: &Options,
) -> Result<MatrixGroupDescription<F>> {
    let target: Vec<Polynomial<F>> = target.iter().filter(|g| !g.is_zero()).cloned().collect();
    let omega_target = alg.ring.ideal_generator_degrees(&target)?;
    let kept = filtered(alg, sigmas, &alg.omega_i, &omega_target)?;
    let mut sources = Vec::new();
    for u in &alg.omega_i {
        sources.push((u.clone(), alg.component(u)?.basis()));
    }
    let r = alg.ring.nvars();
    let cosets = par::try_map(opts.parallelism, &kept, |s| {
        let pattern = pattern_for(s, &alg.ring, &alg.rep)?;
        let mut ideal = admissibility_for(&alg.rep, &pattern.entries, r);
        let mut targets = Vec::new();
        for (u, basis) in &sources {
            let v = s.apply(alg.group(), u)?;
            targets.push((ideal_component(&alg.ring, &target, &v)?, basis));
        }
        let extra = transport_equations(&alg.rep, &pattern, r, &targets)?;
        let mut seen: HashSet<Vec<(Monomial, F)>> = ideal.iter().map(|p| p.terms().to_vec()).collect();
        for e in extra {
            push_equation(&mut ideal, &mut seen, e);
        }
        Ok::<_, Error>(Coset { pattern, ideal })
    })?;
    Ok(describe(alg, cosets))
}

/// For each basis element `h` of a source component, `A h` must lie in the
/// target component: every complement form applied to its coefficient
/// vector vanishes.
fn transport_equations<F: Field>(
    rep: &RepBasis,
    pattern: &CosetPattern,
    r: usize,
    targets: &[(Component<F>, &Vec<Polynomial<F>>)],
) -> Result<Vec<Polynomial<F>>> {
    let cp = ColumnPolys::<F>::new(rep, &pattern.entries, r);
    let images = cp.variable_images(rep);
    let m = cp.m;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (comp, basis) in targets {
        let index: HashMap<&[u32], usize> = comp.monomials.iter().enumerate().map(|(i, mo)| (mo.exps(), i)).collect();
        let forms = comp.space.complement_forms();
        for h in basis.iter() {
            let image = h.substitute(&images);
            let mut coeffs: Vec<Polynomial<F>> = vec![Polynomial::zero(m); comp.monomials.len()];
            for (tail, part) in split_by_tail(&image, m) {
                let k = *index.get(tail.as_slice()).ok_or_else(|| {
                    Error::Invalid("image of a homogeneous element left its degree".into())
                })?;
                coeffs[k] = part;
            }
            for form in &forms {
                let mut eq = Polynomial::zero(m);
                for (f, c) in form.iter().zip(&coeffs) {
                    if !f.is_zero() && !c.is_zero() {
                        eq = eq.add(&c.scale(f));
                    }
                }
                push_equation(&mut out, &mut seen, eq);
            }
        }
    }
    Ok(out)
}

/// The matrix of the graded endomorphism `T_l -> images[l]` on the
/// representation basis.
pub fn representation_matrix<F: Field>(alg: &GradedAlgebra<F>, images: &[Polynomial<F>]) -> Result<Vec<Vec<F>>> {
    let r = alg.ring.nvars();
    if images.len() != r {
        return Err(Error::ShapeMismatch(format!("expected {r} images")));
    }
    let rep = &alg.rep;
    let mut a = vec![vec![F::zero(); rep.n]; rep.n];
    for c in 0..rep.n {
        let mut img = Polynomial::one(r);
        for (l, &e) in rep.monomial(c).exps().iter().enumerate() {
            if e > 0 {
                img = img.mul(&images[l].pow(e));
            }
        }
        for (mon, coef) in img.terms() {
            let row = rep.column_of(mon).ok_or_else(|| {
                Error::NotHomogeneous("image does not stay inside the generator degrees".into())
            })?;
            a[row][c] = coef.clone();
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::grading::AbelianGroup;
    use crate::poly::parse_polynomial;

    fn weighted() -> GradedAlgebra<Rational> {
        let ring = GradedPolyRing::from_columns(AbelianGroup::free(1), &[vec![1], vec![2]]).unwrap();
        GradedAlgebra::new(ring, vec![]).unwrap()
    }

    #[test]
    fn admissibility_of_weighted_plane() {
        let alg = weighted();
        let d = aut_ks(&alg, &[GroupHom::identity(alg.group())], &Options::default()).unwrap();
        let names = d.cosets[0].pattern.entry_names();
        let shown: Vec<String> = d.cosets[0].ideal.iter().map(|g| g.display(&names, &[]).to_string()).collect();
        assert_eq!(shown, vec!["T_3_2", "T_1_1^2 - T_2_2"]);
        let full = admissibility_equations::<Rational>(&alg.ring, &alg.rep);
        assert!(full.len() >= 2);
    }

    #[test]
    fn representation_matrix_of_substitution() {
        let alg = weighted();
        let p = |s: &str| parse_polynomial::<Rational>(s, &alg.ring.names, &[]).unwrap();
        let a = representation_matrix(&alg, &[p("2*T1"), p("3*T2 + T1^2")]).unwrap();
        let q = |v: i64| Rational::from(v);
        assert_eq!(
            a,
            vec![vec![q(2), q(0), q(0)], vec![q(0), q(4), q(1)], vec![q(0), q(0), q(3)]]
        );
        let d = aut_ks(&alg, &[GroupHom::identity(alg.group())], &Options::default()).unwrap();
        assert_eq!(d.locate(&a), Some(0));
        let bad = representation_matrix(&alg, &[p("2*T1"), p("3*T2")]).unwrap();
        assert_eq!(d.locate(&bad), Some(0));
        let mut wrong = bad.clone();
        wrong[1][1] = q(5);
        assert_eq!(d.locate(&wrong), None);
    }
}

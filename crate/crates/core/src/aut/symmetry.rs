use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::GradedAlgebra;
use crate::field::Field;
use crate::graded::Component;
use crate::grading::{GroupElement, GroupHom};
use crate::{par, Error, Options, Result};

/// Variable permutations preserving `I`, as one-line image tuples:
/// `perm[i] = j` sends `T_i` to `T_j` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub perms: Vec<Vec<usize>>,
    /// whether the set is closed under composition
    pub closed: bool,
}

/// Permutations of the variables inducing automorphisms of `R`. Each one
/// comes from some `sigma` and sends variables of degree `w` to variables of
/// degree `sigma(w)`; the candidates are tested by membership in the
/// components of `I`.
pub fn extract_permutation_symmetries<F: Field>(
    alg: &GradedAlgebra<F>,
    sigmas: &[GroupHom],
    opts: &Options,
) -> Result<SymmetryReport> {
    let mut comps: BTreeMap<GroupElement, Component<F>> = BTreeMap::new();
    for u in &alg.omega_i {
        comps.insert(u.clone(), alg.component(u)?);
    }
    let r = alg.ring.nvars();
    let found = par::try_map(opts.parallelism, sigmas, |s| {
        if !alg.maps_onto(s, &alg.omega_i, &alg.omega_i)? {
            return Ok::<_, Error>(Vec::new());
        }
        // classes of variables and their admissible targets
        let mut classes = Vec::new();
        let mut count: u128 = 1;
        for w in &alg.omega_s {
            let img = s.apply(alg.group(), w)?;
            let from: Vec<usize> = (0..r).filter(|&i| alg.ring.degrees[i] == *w).collect();
            let to: Vec<usize> = (0..r).filter(|&i| alg.ring.degrees[i] == img).collect();
            if from.len() != to.len() {
                return Ok(Vec::new());
            }
            count = count.saturating_mul((1..=from.len() as u128).product());
            classes.push((from, to));
        }
        if count > opts.budget.max_pairs as u128 {
            return Err(Error::BudgetExceeded(format!("{count} candidate permutations for one degree automorphism")));
        }
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; r];
        assign(&classes, 0, &mut perm, &mut |p| {
            if preserves(alg, &comps, p) {
                out.push(p.to_vec());
            }
        });
        Ok(out)
    })?;
    let perms: BTreeSet<Vec<usize>> = found.into_iter().flatten().collect();
    let closed = perms
        .iter()
        .all(|p| perms.iter().all(|q| perms.contains(&q.iter().map(|&i| p[i]).collect::<Vec<_>>())));
    Ok(SymmetryReport { perms: perms.into_iter().collect(), closed })
}

fn assign(classes: &[(Vec<usize>, Vec<usize>)], k: usize, perm: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    let Some((from, to)) = classes.get(k) else {
        visit(perm);
        return;
    };
    let mut order = to.clone();
    permutations(&mut order, 0, &mut |images| {
        for (&i, &j) in from.iter().zip(images) {
            perm[i] = j;
        }
        assign(classes, k + 1, perm, visit);
    });
}

fn permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn preserves<F: Field>(alg: &GradedAlgebra<F>, comps: &BTreeMap<GroupElement, Component<F>>, perm: &[usize]) -> bool {
    let r = alg.ring.nvars();
    alg.gens.iter().all(|g| {
        let moved = g.remap(perm, r);
        let Ok(w) = alg.ring.degree_of(&moved) else { return false };
        comps.get(&w).is_some_and(|c| c.contains(&moved))
    })
}

/// Renders permutations in the `{(..),(..)}` syntax, 0- or 1-based.
pub fn format_gfan(perms: &[Vec<usize>], one_based: bool) -> String {
    let shift = usize::from(one_based);
    let tuples: Vec<String> = perms
        .iter()
        .map(|p| format!("({})", p.iter().map(|i| (i + shift).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("{{{}}}", tuples.join(",\n"))
}

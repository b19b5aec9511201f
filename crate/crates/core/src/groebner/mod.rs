//! Gröbner bases by Buchberger's algorithm with the Gebauer–Möller
//! criteria and the sugar selection strategy, and the ideal operations
//! built on them.

mod gpoly;

use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::{Budget, Error, Result};

use gpoly::{reduce, GPoly};

/// A reduced Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F> {
    nvars: usize,
    order: MonomialOrder,
    /// monic, sorted ascending by leading monomial
    polys: Vec<GPoly<F>>,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<F> {
    order: MonomialOrder,
    store: Vec<GPoly<F>>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<F: Field> Engine<F> {
    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugar[i] + lcm.degree() - self.store[i].lm().degree();
        let sj = self.sugar[j] + lcm.degree() - self.store[j].lm().degree();
        si.max(sj)
    }

    /// Adds `h` to the basis, updating pairs by the Gebauer–Möller rules.
    fn update(&mut self, h: GPoly<F>, sugar: u32) {
        let hi = self.store.len();
        let hlm = h.lm().clone();
        self.store.push(h);
        self.sugar.push(sugar);

        let mut cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let glm = self.store[g].lm();
                (g, hlm.lcm(glm), hlm.coprime(glm))
            })
            .collect();
        // chain criterion among the new pairs
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].2 {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let divides = cands[b].1.divides(&cands[a].1);
                if divides && (cands[b].1 != cands[a].1 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut idx = 0;
        cands.retain(|_| {
            idx += 1;
            keep[idx - 1]
        });
        // among pairs with equal lcm a coprime one makes all of them redundant
        let mut fresh = Vec::new();
        for (g, lcm, coprime) in &cands {
            if *coprime {
                continue;
            }
            if cands.iter().any(|(_, l2, c2)| *c2 && l2 == lcm) {
                continue;
            }
            fresh.push(Pair { i: *g, j: hi, lcm: lcm.clone(), sugar: self.pair_sugar(*g, hi, lcm) });
        }
        // old pairs made redundant by h
        let store = &self.store;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let li = store[p.i].lm().lcm(&hlm);
            let lj = store[p.j].lm().lcm(&hlm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(fresh);
        self.active.retain(|&g| !hlm.divides(self.store[g].lm()));
        self.active.push(hi);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar.cmp(&q.sugar).then_with(|| order.compare(&p.lcm, &q.lcm)).then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> GPoly<F> {
        let (f, g) = (&self.store[p.i], &self.store[p.j]);
        let mf = p.lcm.div(f.lm()).expect("lcm");
        let mg = p.lcm.div(g.lm()).expect("lcm");
        // both monic: mf*f - mg*g, with leading terms cancelling
        let a: Vec<_> = f.terms[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
        GPoly { terms: GPoly::sub_mul(&a, &F::one(), &mg, &g.terms[1..], self.order) }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner<F: Field>(
    gens: &[Polynomial<F>],
    nvars: usize,
    order: MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis<F>> {
    let mut input: Vec<GPoly<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            assert_eq!(g.nvars(), nvars, "generator lives in a different ring");
            GPoly::from_poly(g, order).monic()
        })
        .collect();
    input.sort_by(|a, b| order.compare(a.lm(), b.lm()).then_with(|| a.terms.len().cmp(&b.terms.len())));
    let mut eng = Engine { order, store: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in input {
        let basis: Vec<&GPoly<F>> = eng.active.iter().map(|&i| &eng.store[i]).collect();
        let h = reduce(g, &basis, order);
        if h.is_zero() {
            continue;
        }
        let s = h.degree();
        eng.update(h.monic(), s);
    }
    let mut processed = 0usize;
    while let Some(p) = eng.next_pair() {
        if eng.active.iter().any(|&i| eng.store[i].lm().is_one()) {
            break;
        }
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::BudgetExceeded(format!("more than {} S-pairs", budget.max_pairs)));
        }
        if p.lcm.degree() > budget.max_degree {
            return Err(Error::BudgetExceeded(format!(
                "S-pair degree {} exceeds the limit {}",
                p.lcm.degree(),
                budget.max_degree
            )));
        }
        let s = eng.spoly(&p);
        let basis: Vec<&GPoly<F>> = eng.active.iter().map(|&i| &eng.store[i]).collect();
        let h = reduce(s, &basis, order);
        if !h.is_zero() {
            eng.update(h.monic(), p.sugar);
        }
    }
    // interreduce
    let mut polys: Vec<GPoly<F>> = eng.active.iter().map(|&i| eng.store[i].clone()).collect();
    if let Some(one) = polys.iter().find(|p| p.lm().is_one()) {
        polys = vec![one.clone()];
    }
    polys.sort_by(|a, b| order.compare(a.lm(), b.lm()));
    let mut out: Vec<GPoly<F>> = Vec::with_capacity(polys.len());
    for i in 0..polys.len() {
        let others: Vec<&GPoly<F>> = polys.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p).collect();
        let lead = polys[i].terms[0].clone();
        let tail = GPoly { terms: polys[i].terms[1..].to_vec() };
        let red = reduce(tail, &others, order);
        let mut terms = vec![lead];
        terms.extend(red.terms);
        out.push(GPoly { terms });
    }
    Ok(GroebnerBasis { nvars, order, polys: out })
}

impl<F: Field> GroebnerBasis<F> {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// The basis elements, ascending by leading monomial.
    pub fn elements(&self) -> Vec<Polynomial<F>> {
        self.polys.iter().map(|p| p.to_poly(self.nvars)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.lm().clone()).collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p.lm().is_one())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let basis: Vec<&GPoly<F>> = self.polys.iter().collect();
        reduce(GPoly::from_poly(f, self.order), &basis, self.order).to_poly(self.nvars)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Krull dimension of the quotient ring: the size of a largest set of
    /// variables containing the support of no leading monomial. `-1` for
    /// the unit ideal.
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.nvars;
        let supports: Vec<Vec<usize>> = self.polys.iter().map(|p| p.lm().support().collect()).collect();
        let mut best = 0usize;
        let mut chosen = vec![false; n];
        fn independent(supports: &[Vec<usize>], chosen: &[bool]) -> bool {
            supports.iter().all(|s| s.iter().any(|&v| !chosen[v]))
        }
        fn dfs(i: usize, size: usize, n: usize, supports: &[Vec<usize>], chosen: &mut Vec<bool>, best: &mut usize) {
            if size > *best {
                *best = size;
            }
            if i == n || size + (n - i) <= *best {
                return;
            }
            chosen[i] = true;
            if independent(supports, chosen) {
                dfs(i + 1, size + 1, n, supports, chosen, best);
            }
            chosen[i] = false;
            dfs(i + 1, size, n, supports, chosen, best);
        }
        dfs(0, 0, n, &supports, &mut chosen, &mut best);
        best as i64
    }
}

/// Grevlex basis; the default for membership and dimension questions.
pub fn groebner_default<F: Field>(gens: &[Polynomial<F>], nvars: usize, budget: &Budget) -> Result<GroebnerBasis<F>> {
    groebner(gens, nvars, MonomialOrder::GrevLex, budget)
}

pub fn membership<F: Field>(f: &Polynomial<F>, gens: &[Polynomial<F>], budget: &Budget) -> Result<bool> {
    Ok(groebner_default(gens, f.nvars(), budget)?.contains(f))
}

/// `I ∩ K[remaining variables]`; generators are returned in the original
/// ring and involve none of `vars`.
pub fn eliminate<F: Field>(
    gens: &[Polynomial<F>],
    nvars: usize,
    vars: &[usize],
    budget: &Budget,
) -> Result<Vec<Polynomial<F>>> {
    if vars.is_empty() {
        return Ok(groebner_default(gens, nvars, budget)?.elements());
    }
    // move eliminated variables to the front
    let mut perm = vec![usize::MAX; nvars];
    let mut next = 0;
    for &v in vars {
        if perm[v] == usize::MAX {
            perm[v] = next;
            next += 1;
        }
    }
    let split = next;
    for p in perm.iter_mut() {
        if *p == usize::MAX {
            *p = next;
            next += 1;
        }
    }
    let mut inv = vec![0; nvars];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let moved: Vec<Polynomial<F>> = gens.iter().map(|g| g.remap(&perm, nvars)).collect();
    let gb = groebner(&moved, nvars, MonomialOrder::Block { split }, budget)?;
    Ok(gb
        .elements()
        .into_iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exps()[..split].iter().all(|&e| e == 0)))
        .map(|p| p.remap(&inv, nvars))
        .collect())
}

/// Adds a variable `t` at index `n`: generators of `I + <1 - t f>` in
/// `n + 1` variables.
pub fn with_inverse<F: Field>(gens: &[Polynomial<F>], f: &Polynomial<F>) -> Vec<Polynomial<F>> {
    let n = f.nvars();
    let embed: Vec<usize> = (0..n).collect();
    let mut out: Vec<Polynomial<F>> = gens.iter().map(|g| g.remap(&embed, n + 1)).collect();
    let t = Polynomial::var(n + 1, n);
    out.push(Polynomial::one(n + 1).sub(&t.mul(&f.remap(&embed, n + 1))));
    out
}

/// `I : f^∞`, computed as `(I + <1 - t f>) ∩ K[x]`.
pub fn saturate<F: Field>(gens: &[Polynomial<F>], f: &Polynomial<F>, budget: &Budget) -> Result<Vec<Polynomial<F>>> {
    let n = f.nvars();
    let ext = with_inverse(gens, f);
    let elim = eliminate(&ext, n + 1, &[n], budget)?;
    let keep: Vec<usize> = (0..n).collect();
    Ok(elim.into_iter().map(|p| p.restrict(&keep).expect("t eliminated")).collect())
}

/// Whether `1` is not in the ideal.
pub fn is_solvable<F: Field>(gens: &[Polynomial<F>], nvars: usize, budget: &Budget) -> Result<bool> {
    Ok(!groebner_default(gens, nvars, budget)?.is_unit())
}

/// Krull dimension of `K[x]/I`, `-1` for the unit ideal.
pub fn ideal_dimension<F: Field>(gens: &[Polynomial<F>], nvars: usize, budget: &Budget) -> Result<i64> {
    Ok(groebner_default(gens, nvars, budget)?.dimension())
}

/// `I ∩ J` via `t I + (1 - t) J`.
pub fn intersect<F: Field>(
    a: &[Polynomial<F>],
    b: &[Polynomial<F>],
    nvars: usize,
    budget: &Budget,
) -> Result<Vec<Polynomial<F>>> {
    let embed: Vec<usize> = (0..nvars).collect();
    let t = Polynomial::var(nvars + 1, nvars);
    let one_minus_t = Polynomial::one(nvars + 1).sub(&t);
    let mut gens: Vec<Polynomial<F>> = a.iter().map(|g| t.mul(&g.remap(&embed, nvars + 1))).collect();
    gens.extend(b.iter().map(|g| one_minus_t.mul(&g.remap(&embed, nvars + 1))));
    let elim = eliminate(&gens, nvars + 1, &[nvars], budget)?;
    Ok(elim.into_iter().map(|p| p.restrict(&embed).expect("t eliminated")).collect())
}

/// Preimage of the ideal `gens` (in `n` variables) under the ring map
/// sending `Y_j` to `images[j]`; returned in `images.len()` variables.
pub fn preimage<F: Field>(images: &[Polynomial<F>], gens: &[Polynomial<F>], n: usize, budget: &Budget) -> Result<Vec<Polynomial<F>>> {
    let m = images.len();
    let total = n + m;
    let embed_t: Vec<usize> = (0..n).collect();
    let mut graph: Vec<Polynomial<F>> = gens.iter().map(|g| g.remap(&embed_t, total)).collect();
    for (j, img) in images.iter().enumerate() {
        graph.push(Polynomial::var(total, n + j).sub(&img.remap(&embed_t, total)));
    }
    let t_vars: Vec<usize> = (0..n).collect();
    let elim = eliminate(&graph, total, &t_vars, budget)?;
    let keep: Vec<usize> = (n..total).collect();
    Ok(elim.into_iter().map(|p| p.restrict(&keep).expect("source variables eliminated")).collect())
}

/// Result of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolve<F> {
    /// variables still present, in order
    pub kept: Vec<usize>,
    /// remaining generators in the kept variables
    pub gens: Vec<Polynomial<F>>,
    /// `(x, h)`: `x = h` in the quotient, `h` in all `nvars` variables
    pub solved: Vec<(usize, Polynomial<F>)>,
}

/// Repeatedly picks a generator `c x + h` with `x` absent from `h`,
/// substitutes `x = -h / c` everywhere and drops `x`. The quotient ring is
/// unchanged up to isomorphism.
pub fn solve_linear<F: Field>(gens: &[Polynomial<F>], nvars: usize) -> LinearSolve<F> {
    let mut gens: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut alive = vec![true; nvars];
    let mut solved = Vec::new();
    loop {
        let pick = gens.iter().enumerate().find_map(|(k, g)| {
            (0..nvars).filter(|&x| alive[x]).find_map(|x| {
                let mut with = g.terms().iter().filter(|(m, _)| m.exps()[x] > 0);
                let first = with.next()?;
                (with.next().is_none() && first.0.degree() == 1).then(|| (k, x, first.1.clone()))
            })
        });
        let Some((k, x, c)) = pick else { break };
        let g = gens.swap_remove(k);
        let h = g.sub(&Polynomial::var(nvars, x).scale(&c)).scale(&c.inv().neg());
        let mut images: Vec<Polynomial<F>> = (0..nvars).map(|i| Polynomial::var(nvars, i)).collect();
        images[x] = h.clone();
        gens = gens.iter().map(|p| p.substitute(&images)).filter(|p| !p.is_zero()).collect();
        for (_, e) in solved.iter_mut() {
            *e = Polynomial::substitute(e, &images);
        }
        alive[x] = false;
        solved.push((x, h));
    }
    let kept: Vec<usize> = (0..nvars).filter(|&x| alive[x]).collect();
    let gens = gens.iter().map(|g| g.restrict(&kept).expect("solved variables are gone")).collect();
    LinearSolve { kept, gens, solved }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{RatFunc, Rational};
    use crate::poly::{default_var_names, parse_polynomial};

    fn p(s: &str, n: usize) -> Polynomial<Rational> {
        parse_polynomial(s, &default_var_names(n), &[]).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    /// Buchberger's criterion checked directly on the reduced basis.
    fn s_pairs_reduce<F: Field>(gb: &GroebnerBasis<F>) -> bool {
        let polys = &gb.polys;
        let basis: Vec<&GPoly<F>> = polys.iter().collect();
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                let lcm = polys[i].lm().lcm(polys[j].lm());
                let mf = lcm.div(polys[i].lm()).unwrap();
                let mg = lcm.div(polys[j].lm()).unwrap();
                let a: Vec<_> = polys[i].terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
                let s = GPoly { terms: GPoly::sub_mul(&a, &F::one(), &mg, &polys[j].terms, gb.order) };
                if !reduce(s, &basis, gb.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn small_bases() {
        let gb = groebner_default(&[p("T1^2 - 1", 1), p("T1 - 1", 1)], 1, &b()).unwrap();
        assert_eq!(gb.elements(), vec![p("T1 - 1", 1)]);
        let gb = groebner_default(&[p("T1*T2 - 1", 2)], 2, &b()).unwrap();
        assert_eq!(gb.elements(), vec![p("T1*T2 - 1", 2)]);
        let gb = groebner(&[p("T1^2 - T2", 2)], 2, MonomialOrder::Lex, &b()).unwrap();
        assert_eq!(gb.normal_form(&p("T1^2", 2)), p("T2", 2));
        assert!(gb.contains(&p("T1^4 - T2^2", 2)));
    }

    #[test]
    fn pluecker_basis() {
        let n = 10;
        let rels = [
            "T5*T10 - T6*T9 + T7*T8",
            "T1*T9 - T2*T7 + T4*T5",
            "T1*T8 - T2*T6 + T3*T5",
            "T1*T10 - T3*T7 + T4*T6",
            "T2*T10 - T3*T9 + T4*T8",
        ];
        let gens: Vec<_> = rels.iter().map(|r| p(r, n)).collect();
        let gb = groebner_default(&gens, n, &b()).unwrap();
        assert_eq!(gb.len(), 5);
        assert!(s_pairs_reduce(&gb));
        assert_eq!(gb.dimension(), 7);
        // permuted relation from the symmetry list
        let perm = [4, 3, 2, 1, 10, 9, 7, 8, 6, 5];
        let images: Vec<_> = perm.iter().map(|&j| Polynomial::var(n, j - 1)).collect();
        assert!(gb.contains(&gens[0].substitute(&images)));
        // uniqueness under shuffling
        let mut rev = gens.clone();
        rev.reverse();
        assert_eq!(groebner_default(&rev, n, &b()).unwrap(), gb);
    }

    #[test]
    fn elimination_and_saturation() {
        // variables: T1 = x, T2 = y, T3 = t
        let e = eliminate(&[p("T2 - T1^2", 3), p("T1 - T3", 3)], 3, &[2], &b()).unwrap();
        let gb = groebner_default(&e, 3, &b()).unwrap();
        assert!(gb.contains(&p("T2 - T1^2", 3)));
        assert!(eliminate(&[p("T1*T2 - 1", 2)], 2, &[1], &b()).unwrap().is_empty());
        let s = saturate(&[p("T1*T2", 2)], &p("T1", 2), &b()).unwrap();
        assert_eq!(s, vec![p("T2", 2)]);
        assert!(!is_solvable(&[p("T1", 1), p("T1 - 1", 1)], 1, &b()).unwrap());
    }

    #[test]
    fn preimages() {
        // Y -> T^2, I = <T^2 - 1>
        let r = preimage(&[p("T1^2", 1)], &[p("T1^2 - 1", 1)], 1, &b()).unwrap();
        assert_eq!(r, vec![p("T1 - 1", 1)]);
        let r = preimage(&[p("T1*T2", 2)], &[p("T1*T2", 2)], 2, &b()).unwrap();
        assert_eq!(r, vec![p("T1", 1)]);
        // kernel of Y1 -> T1^2, Y2 -> T1*T2, Y3 -> T2^2
        let r = preimage(&[p("T1^2", 2), p("T1*T2", 2), p("T2^2", 2)], &[], 2, &b()).unwrap();
        assert_eq!(r, vec![p("T2^2 - T1*T3", 3)]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(ideal_dimension(&[p("T1^2 + T2^2 - 1", 2)], 2, &b()).unwrap(), 1);
        assert_eq!(ideal_dimension::<Rational>(&[], 4, &b()).unwrap(), 4);
        assert_eq!(ideal_dimension(&[p("1", 2)], 2, &b()).unwrap(), -1);
        assert_eq!(ideal_dimension(&[p("T1*T2", 3), p("T1*T3", 3)], 3, &b()).unwrap(), 2);
    }

    #[test]
    fn intersection() {
        let r = intersect(&[p("T1", 2)], &[p("T2", 2)], 2, &b()).unwrap();
        assert_eq!(r, vec![p("T1*T2", 2)]);
    }

    #[test]
    fn budget_is_a_hard_error() {
        let tiny = Budget { max_pairs: 1, max_degree: 64, max_faces: 1 };
        let gens = [p("T1^2 + T2*T3 - 1", 3), p("T2^2 + T1*T3 - 1", 3), p("T3^2 + T1*T2 - 1", 3)];
        assert!(matches!(groebner_default(&gens, 3, &tiny), Err(Error::BudgetExceeded(_))));
        let low = Budget { max_pairs: 1000, max_degree: 2, max_faces: 1 };
        assert!(matches!(groebner_default(&gens, 3, &low), Err(Error::BudgetExceeded(_))));
        assert!(groebner_default(&gens, 3, &b()).is_ok());
    }

    #[test]
    fn parametric_coefficients() {
        let params = vec!["a".to_string()];
        let v = default_var_names(2);
        let f: Polynomial<RatFunc> = parse_polynomial("(a-1)*T1^2 - T2", &v, &params).unwrap();
        let g: Polynomial<RatFunc> = parse_polynomial("T1^2 - a*T2", &v, &params).unwrap();
        let gb = groebner_default(&[f, g], 2, &b()).unwrap();
        // generic a: both T1^2 and T2 vanish
        let t2: Polynomial<RatFunc> = parse_polynomial("T2", &v, &params).unwrap();
        assert!(gb.contains(&t2));
        assert_eq!(gb.dimension(), 0);
    }

    #[test]
    fn linear_solving() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let p = |t: &str| parse_polynomial::<Rational>(t, &names, &[]).unwrap();
        let out = solve_linear(&[p("y - x^2"), p("2*z - y*x + 1")], 3);
        assert_eq!(out.kept, vec![0]);
        assert!(out.gens.is_empty());
        let out = solve_linear(&[p("x*y - z^2")], 3);
        assert_eq!(out.kept, vec![0, 1, 2]);
        assert_eq!(out.gens.len(), 1);
    }
}

//! Problem files, result documents and the command drivers behind the
//! `gradaut` binary.
//!
//! # Problem files
//!
//! Plain text, one `key: value` per line or a `key:` line followed by a
//! block of rows. `#` starts a comment.
//!
//! ```text
//! field: Q                 # or Q(a, b) for rational functions in a, b
//! group: Z^2 + Z/2         # optional; checked against the degree rows
//! variables: T1 T2 T3 T4 T5  # optional; defaults to T1..Tr
//! degrees:
//!   1 1 1 1 1              # free rows
//!   1 -1 0 0 1
//!   1 1 1 0 0 mod 2        # torsion rows carry their modulus
//! relations:
//!   T1*T2 + T3^2 + T4^2    # one polynomial per line
//! ample: 2 1 0             # free entries, then torsion entries
//! chamber:                 # optional generators of a trusted chamber
//!   1 1
//!   1 0
//! budget: pairs 200000 degree 64 faces 4096
//! ```
//!
//! Column `j` of the degree matrix is the degree of the `j`-th variable.
//! Group elements are written as integer vectors, free part first, torsion
//! entries last.
//!
//! Polynomials use `+ - * ^`, parentheses, rational constants such as `3/2`,
//! the variable names and the field parameters, e.g. `(a-1)*T1*T4 - T5^2`.

mod problem;

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::aut::{
    aut_ks, component_count, coset_dimensions, dim_bound, extract_permutation_symmetries, format_gfan, gamma_group,
    quot_rep, stab_ideal, Gamma, GradedAlgebra, MatrixGroupDescription,
};
use crate::cone::RationalCone;
use crate::field::{Field, RatFunc, Rational};
use crate::graded::minimalize_presentation;
use crate::grading::{enumerate_aut_stabilizing, GroupElement, GroupHom};
use crate::mds::{aut_x, check_entry_homogeneity, git_cone, veronese, CoxInput};
use crate::poly::{Monomial, Polynomial};
use crate::{Budget, Error, Options, Parallelism, Result};

pub use problem::{parse_chamber, ProblemFile};

/// Output of one command: a human-readable report and a machine section.
#[derive(Clone, Debug, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub version: String,
    pub input_sha256: String,
    pub budget: Budget,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub text: String,
    pub result: serde_json::Value,
}

impl ResultDocument {
    fn new(command: &str, p: &ProblemFile, text: String, result: serde_json::Value) -> Self {
        let digest = Sha256::digest(p.to_text().as_bytes());
        ResultDocument {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_sha256: hex::encode(digest),
            budget: p.budget,
            elapsed_ms: None,
            text,
            result,
        }
    }

    pub fn machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// The report followed by the machine section.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# gradaut {} {}", self.command, self.version);
        let _ = writeln!(s, "# input sha256 {}", self.input_sha256);
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "# elapsed {ms} ms");
        }
        s.push('\n');
        s.push_str(&self.text);
        s.push_str("\n## machine\n");
        s.push_str(&self.machine());
        s.push('\n');
        s
    }
}

/// A diagnostic for a failed command.
pub fn error_document(e: &Error) -> String {
    serde_json::to_string_pretty(&json!({ "error": e.code(), "message": e.to_string(), "exit_code": e.exit_code() }))
        .expect("serializable")
}

fn options(p: &ProblemFile, parallelism: Parallelism) -> Options {
    Options { budget: p.budget, parallelism }
}

struct Prepared<F> {
    alg: GradedAlgebra<F>,
    eliminated: Vec<String>,
}

fn prepare<F: Field>(p: &ProblemFile) -> Result<Prepared<F>> {
    let ring = p.ring()?;
    let gens = p.relations::<F>()?;
    let pres = minimalize_presentation(&ring, &gens)?;
    let eliminated = pres
        .eliminated
        .iter()
        .map(|(name, expr)| format!("{name} = {}", expr.display(&ring.names, &ring.params)))
        .collect();
    Ok(Prepared { alg: GradedAlgebra::new(pres.ring, pres.gens)?, eliminated })
}

fn header<F: Field>(s: &mut String, prep: &Prepared<F>) {
    let ring = &prep.alg.ring;
    let field = if ring.params.is_empty() { "Q".to_string() } else { format!("Q({})", ring.params.join(", ")) };
    let _ = writeln!(s, "ring: {field}[{}] graded by {}", ring.names.join(", "), ring.group);
    for e in &prep.eliminated {
        let _ = writeln!(s, "eliminated: {e}");
    }
    let rels: Vec<String> = prep.alg.gens.iter().map(|g| g.display(&ring.names, &ring.params).to_string()).collect();
    let _ = writeln!(s, "relations: {}", if rels.is_empty() { "none".into() } else { rels.join(", ") });
    let _ = writeln!(s, "generator degrees: {}", show_degrees(&prep.alg.omega_s));
    let _ = writeln!(s, "relation degrees: {}", show_degrees(&prep.alg.omega_i));
}

fn show_degrees(ws: &[GroupElement]) -> String {
    if ws.is_empty() {
        return "none".into();
    }
    ws.iter().map(|w| format!("({w})")).collect::<Vec<_>>().join(" ")
}

fn show_homs(s: &mut String, title: &str, hs: &[GroupHom]) {
    let _ = writeln!(s, "{title}: {}", hs.len());
    for h in hs {
        let _ = writeln!(s, "  {:?}", h.matrix());
    }
}

fn gamma_text(s: &mut String, g: &Gamma) {
    let _ = writeln!(s, "Gamma: order {}, {}", g.order(), if g.abelian { "abelian" } else { "nonabelian" });
}

fn ring_json<F: Field>(prep: &Prepared<F>) -> serde_json::Value {
    let ring = &prep.alg.ring;
    json!({
        "variables": ring.names,
        "params": ring.params,
        "group": ring.group.to_string(),
        "eliminated": prep.eliminated,
        "relations": prep.alg.gens.iter().map(|g| g.display(&ring.names, &ring.params).to_string()).collect::<Vec<_>>(),
        "generator_degrees": prep.alg.omega_s.iter().map(|w| w.coords()).collect::<Vec<_>>(),
        "relation_degrees": prep.alg.omega_i.iter().map(|w| w.coords()).collect::<Vec<_>>(),
    })
}

fn describe_group<F: Field>(
    s: &mut String,
    desc: &MatrixGroupDescription<F>,
    opts: &Options,
) -> Result<serde_json::Value> {
    let dims = coset_dimensions(desc, opts)?;
    let gamma = gamma_group(desc, opts)?;
    let comps = component_count(desc, opts)?;
    let homogeneous = check_entry_homogeneity(desc);
    s.push_str(&desc.to_text());
    let _ = writeln!(s, "coset dimensions: {dims:?}");
    let dim = dims.iter().copied().max().unwrap_or(-1);
    let _ = writeln!(s, "dimension: {dim}");
    gamma_text(s, &gamma);
    match comps.total {
        Some(t) => {
            let _ = writeln!(s, "components: {t}");
        }
        None => {
            let _ = writeln!(s, "components: undecided");
        }
    }
    for c in &comps.per_coset {
        let count = c.count.map_or("?".to_string(), |x| x.to_string());
        let _ = writeln!(s, "  coset {}: {count} ({})", c.coset + 1, c.certificate);
    }
    let _ = writeln!(s, "entry ideals homogeneous: {homogeneous}");
    // identity coset with no equations and only 1x1 blocks: the diagonal torus
    let torus = desc.basis.blocks.iter().all(|b| b.dim() == 1)
        && desc.cosets.iter().any(|c| c.is_identity() && c.ideal.is_empty());
    let torus_rank = torus.then_some(desc.n());
    if let Some(r) = torus_rank {
        let _ = writeln!(s, "identity component: (K*)^{r}");
    }
    Ok(json!({
        "identity_torus_rank": torus_rank,
        "description": desc.to_json(),
        "coset_dimensions": dims,
        "dimension": dim,
        "gamma": gamma,
        "components": comps,
        "entry_ideals_homogeneous": homogeneous,
    }))
}

fn by_field<T>(p: &ProblemFile, q: impl FnOnce() -> Result<T>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    if p.params.is_empty() {
        q()
    } else {
        f()
    }
}

/// Graded automorphisms of the ring, over all degree automorphisms
/// stabilizing the generator degrees.
pub fn cmd_aut_ring(p: &ProblemFile, parallelism: Parallelism) -> Result<ResultDocument> {
    by_field(p, || aut_ring::<Rational>(p, parallelism), || aut_ring::<RatFunc>(p, parallelism))
}

fn aut_ring<F: Field>(p: &ProblemFile, parallelism: Parallelism) -> Result<ResultDocument> {
    let opts = options(p, parallelism);
    let prep = prepare::<F>(p)?;
    let alg = &prep.alg;
    let mut s = String::new();
    header(&mut s, &prep);
    let sigmas = enumerate_aut_stabilizing(alg.group(), &alg.omega_s, opts.parallelism)?;
    show_homs(&mut s, "degree automorphisms stabilizing the generator degrees", &sigmas);
    let ks = aut_ks(alg, &sigmas, &opts)?;
    let adm = ks.cosets.iter().find(|c| c.is_identity()).map_or(0, |c| c.ideal.len());
    let _ = writeln!(s, "admissibility equations (identity coset): {adm}");
    let stab = stab_ideal(alg, &sigmas, &opts)?;
    let quot = quot_rep(alg, &stab, &opts)?;
    let unchanged = quot == stab;
    let _ = writeln!(s, "stabilizer cosets: {}", stab.cosets.len());
    if !unchanged {
        s.push_str("stabilizer:\n");
        s.push_str(&stab.to_text());
        s.push_str("image in GL(R):\n");
    }
    let group = describe_group(&mut s, &quot, &opts)?;
    let bound = dim_bound(alg)?;
    let _ = writeln!(s, "dimension bound: {} (algebra), {} (Cox ring)", bound.algebra, bound.mds);
    let result = json!({
        "ring": ring_json(&prep),
        "sigmas": sigmas.iter().map(|h| h.matrix()).collect::<Vec<_>>(),
        "admissibility_equations": adm,
        "stabilizer": stab.to_json(),
        "quotient_unchanged": unchanged,
        "group": group,
        "dim_bound": bound,
    });
    Ok(ResultDocument::new("aut-ring", p, s, result))
}

fn chamber_cone(p: &ProblemFile, override_rows: Option<&[Vec<i64>]>) -> Result<Option<RationalCone>> {
    let k = p.group()?.free_rank();
    let rows = override_rows.or(p.chamber.as_deref());
    match rows {
        None => Ok(None),
        Some(r) => {
            if r.iter().any(|x| x.len() != k) {
                return Err(Error::ShapeMismatch(format!("chamber generators need {k} entries")));
            }
            Ok(Some(RationalCone::from_generators(k, r)))
        }
    }
}

fn cox<F: Field>(p: &ProblemFile, prep: &Prepared<F>) -> Result<CoxInput<F>> {
    let w = p.ample_class()?.ok_or_else(|| Error::Invalid("this command needs an `ample:` class".into()))?;
    CoxInput::new(prep.alg.clone(), w)
}

fn cone_text(s: &mut String, title: &str, c: &RationalCone) {
    let _ = writeln!(s, "{title}: dimension {}", c.dimension());
    for r in &c.rays {
        let _ = writeln!(s, "  ray {r:?}");
    }
    for l in &c.lineality {
        let _ = writeln!(s, "  line {l:?}");
    }
    for f in &c.facets {
        let _ = writeln!(s, "  facet {f:?} >= 0");
    }
    for e in &c.equations {
        let _ = writeln!(s, "  equation {e:?} = 0");
    }
}

fn monomial_text<F: Field>(m: &Monomial, names: &[String]) -> String {
    Polynomial::<F>::monomial(m.clone(), F::one()).display(names, &[]).to_string()
}

/// The automorphism group of the variety: chamber, `Aut_H(X^)`, the Hopf
/// algebra presentation and the invariants.
pub fn cmd_aut_mds(p: &ProblemFile, chamber: Option<&[Vec<i64>]>, parallelism: Parallelism) -> Result<ResultDocument> {
    by_field(p, || aut_mds::<Rational>(p, chamber, parallelism), || aut_mds::<RatFunc>(p, chamber, parallelism))
}

fn aut_mds<F: Field>(p: &ProblemFile, chamber: Option<&[Vec<i64>]>, parallelism: Parallelism) -> Result<ResultDocument> {
    let opts = options(p, parallelism);
    let prep = prepare::<F>(p)?;
    let cox = cox(p, &prep)?;
    let supplied = chamber_cone(p, chamber)?;
    let out = aut_x(&cox, supplied.as_ref(), &opts)?;
    let mut s = String::new();
    header(&mut s, &prep);
    let _ = writeln!(s, "ample class: ({})", cox.ample);
    cone_text(&mut s, "chamber", &out.hat.chamber);
    let _ = writeln!(s, "degree automorphisms stabilizing the generator degrees: {}", out.hat.aut_omega.len());
    show_homs(&mut s, "degree automorphisms preserving the chamber", &out.hat.sigma);
    s.push_str(&out.hat.group.to_text());
    let _ = writeln!(s, "dim Aut_H(X^): {}", out.aut_hat_dimension);
    let _ = writeln!(s, "dim Aut(X): {}", out.dimension);
    gamma_text(&mut s, &out.gamma);
    match out.components {
        Some(c) => {
            let _ = writeln!(s, "components of Aut(X): {c} ({})", out.component_certificate);
        }
        None => {
            let _ = writeln!(s, "components of Aut(X): undecided ({})", out.component_certificate);
        }
    }
    let _ = writeln!(s, "Hopf algebra presentation: {}", out.presentation_status);
    let mut pres_json = serde_json::Value::Null;
    if let Some(pres) = &out.presentation {
        let coords = pres.coordinate_names();
        let names = pres.names();
        let params = &prep.alg.ring.params;
        let gens: Vec<String> = pres.generators.iter().map(|m| monomial_text::<F>(m, &coords)).collect();
        let rels: Vec<String> = pres.relations.iter().map(|g| g.display(&names, params).to_string()).collect();
        let _ = writeln!(s, "  coordinates: {} with D = 1/det", coords.join(", "));
        for (n, g) in names.iter().zip(&gens) {
            let _ = writeln!(s, "  {n} = {g}");
        }
        let _ = writeln!(s, "  relations: {}", rels.len());
        for r in &rels {
            let _ = writeln!(s, "  {r}");
        }
        if let Some(d) = out.presentation_dimension {
            let _ = writeln!(s, "  Krull dimension: {d}");
        }
        pres_json = json!({ "coordinates": coords, "generators": gens, "relations": rels });
    }
    let result = json!({
        "ring": ring_json(&prep),
        "ample": cox.ample.coords(),
        "chamber": out.hat.chamber,
        "sigma": out.hat.sigma.iter().map(|h| h.matrix()).collect::<Vec<_>>(),
        "aut_hat": out.hat.group.to_json(),
        "summary": out.summary(),
        "gamma": out.gamma,
        "presentation": pres_json,
    });
    Ok(ResultDocument::new("aut-mds", p, s, result))
}

/// Variable permutations preserving the ideal, exported for Gröbner fan
/// symmetry options.
pub fn cmd_symmetries(p: &ProblemFile, one_based: bool, parallelism: Parallelism) -> Result<ResultDocument> {
    by_field(p, || symmetries::<Rational>(p, one_based, parallelism), || symmetries::<RatFunc>(p, one_based, parallelism))
}

fn symmetries<F: Field>(p: &ProblemFile, one_based: bool, parallelism: Parallelism) -> Result<ResultDocument> {
    let opts = options(p, parallelism);
    let prep = prepare::<F>(p)?;
    let alg = &prep.alg;
    let sigmas = enumerate_aut_stabilizing(alg.group(), &alg.omega_s, opts.parallelism)?;
    let rep = extract_permutation_symmetries(alg, &sigmas, &opts)?;
    let exported = format_gfan(&rep.perms, one_based);
    let mut s = String::new();
    header(&mut s, &prep);
    let _ = writeln!(s, "permutations: {}", rep.perms.len());
    let _ = writeln!(s, "closed under composition: {}", rep.closed);
    let _ = writeln!(s, "indexing: {}", if one_based { "1-based" } else { "0-based" });
    s.push_str(&exported);
    s.push('\n');
    let shift = usize::from(one_based);
    let perms: Vec<Vec<usize>> = rep.perms.iter().map(|q| q.iter().map(|x| x + shift).collect()).collect();
    let result = json!({
        "ring": ring_json(&prep),
        "one_based": one_based,
        "permutations": perms,
        "closed": rep.closed,
        "symmetry_option": exported,
    });
    Ok(ResultDocument::new("symmetries", p, s, result))
}

/// Upper bounds for the dimension of the automorphism groups.
pub fn cmd_dim_bound(p: &ProblemFile) -> Result<ResultDocument> {
    by_field(p, || bound::<Rational>(p), || bound::<RatFunc>(p))
}

fn bound<F: Field>(p: &ProblemFile) -> Result<ResultDocument> {
    let prep = prepare::<F>(p)?;
    let b = dim_bound(&prep.alg)?;
    let mut s = String::new();
    header(&mut s, &prep);
    let _ = writeln!(s, "dim Aut_K(R) <= {}", b.algebra);
    let _ = writeln!(s, "dim Aut(X) <= {}", b.mds);
    Ok(ResultDocument::new("dim-bound", p, s, json!({ "ring": ring_json(&prep), "dim_bound": b })))
}

/// The GIT chamber of the ample class.
pub fn cmd_git_cone(p: &ProblemFile, chamber: Option<&[Vec<i64>]>, parallelism: Parallelism) -> Result<ResultDocument> {
    by_field(p, || git::<Rational>(p, chamber, parallelism), || git::<RatFunc>(p, chamber, parallelism))
}

fn git<F: Field>(p: &ProblemFile, chamber: Option<&[Vec<i64>]>, parallelism: Parallelism) -> Result<ResultDocument> {
    let opts = options(p, parallelism);
    let prep = prepare::<F>(p)?;
    let cox = cox(p, &prep)?;
    let supplied = chamber_cone(p, chamber)?;
    let c = git_cone(&cox, supplied.as_ref(), &opts)?;
    let mut s = String::new();
    header(&mut s, &prep);
    let _ = writeln!(s, "ample class: ({})", cox.ample);
    cone_text(&mut s, "chamber", &c);
    let interior = c.relative_interior_contains(&cox.ample.free);
    let _ = writeln!(s, "ample class in the relative interior: {interior}");
    let result = json!({ "ring": ring_json(&prep), "ample": cox.ample.coords(), "chamber": c, "interior": interior });
    Ok(ResultDocument::new("git-cone", p, s, result))
}

/// The Veronese subalgebra of the degrees in the subgroup generated by
/// `subgroup` (the degree-zero part when empty).
pub fn cmd_veronese(p: &ProblemFile, subgroup: &[Vec<i64>], parallelism: Parallelism) -> Result<ResultDocument> {
    by_field(p, || ver::<Rational>(p, subgroup, parallelism), || ver::<RatFunc>(p, subgroup, parallelism))
}

fn ver<F: Field>(p: &ProblemFile, subgroup: &[Vec<i64>], parallelism: Parallelism) -> Result<ResultDocument> {
    let opts = options(p, parallelism);
    // no minimal presentation here: the grading need not be pointed
    let ring = p.ring()?;
    let rels = p.relations::<F>()?;
    let group = &ring.group;
    if subgroup.iter().any(|x| x.len() != group.width()) {
        return Err(Error::ShapeMismatch(format!("subgroup generators need {} entries", group.width())));
    }
    let sub: Vec<GroupElement> = subgroup.iter().map(|x| group.from_coords(x)).collect();
    let v = veronese(&ring, &rels, &sub, &opts)?;
    let names = v.names();
    let gens: Vec<String> = v.generators.iter().map(|m| monomial_text::<F>(m, &ring.names)).collect();
    let shown_rels: Vec<String> = v.relations.iter().map(|g| g.display(&names, &ring.params).to_string()).collect();
    let mut s = String::new();
    let _ = writeln!(s, "ring: [{}] graded by {}", ring.names.join(", "), ring.group);
    let shown: Vec<String> = sub.iter().map(|w| format!("({w})")).collect();
    let _ = writeln!(s, "subgroup: {}", if shown.is_empty() { "0".into() } else { shown.join(" ") });
    let _ = writeln!(s, "generators: {}", gens.len());
    for (n, g) in names.iter().zip(&gens) {
        let _ = writeln!(s, "  {n} = {g}");
    }
    let _ = writeln!(s, "relations: {}", shown_rels.len());
    for r in &shown_rels {
        let _ = writeln!(s, "  {r}");
    }
    let result = json!({ "variables": ring.names, "subgroup": subgroup, "generators": gens, "relations": shown_rels });
    Ok(ResultDocument::new("veronese", p, s, result))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "degrees:\n 1 1 1 1 1\n 1 -1 0 0 1\n 1 1 1 0 0 mod 2\nrelations:\n T1*T2 + T3^2 + T4^2\nample: 2 1 0\n";

    #[test]
    fn aut_ring_report() {
        let p = ProblemFile::parse(EX).unwrap();
        let d = cmd_aut_ring(&p, Parallelism::Sequential).unwrap();
        assert_eq!(d.result["group"]["dimension"], 3);
        assert_eq!(d.result["group"]["components"]["total"], 4);
        assert_eq!(d.result["group"]["gamma"]["elements"].as_array().unwrap().len(), 2);
        let again = cmd_aut_ring(&p, Parallelism::Parallel).unwrap();
        assert_eq!(d.render(), again.render());
    }

    #[test]
    fn mds_commands() {
        let p = ProblemFile::parse(EX).unwrap();
        let d = cmd_aut_mds(&p, None, Parallelism::Parallel).unwrap();
        assert_eq!(d.result["summary"]["dimension"], 1);
        assert_eq!(d.result["summary"]["components"], 2);
        let g = cmd_git_cone(&p, None, Parallelism::Parallel).unwrap();
        assert_eq!(g.result["chamber"]["rays"], json!([[1, 0], [1, 1]]));
        let bad = cmd_git_cone(&p, Some(&[vec![0, 1]]), Parallelism::Parallel).unwrap_err();
        assert_eq!(bad.exit_code(), 5);
        assert_eq!(cmd_dim_bound(&p).unwrap().result["dim_bound"]["mds"], 3);
    }

    #[test]
    fn symmetries_of_the_quadric() {
        let p = ProblemFile::parse(EX).unwrap();
        let d = cmd_symmetries(&p, true, Parallelism::Parallel).unwrap();
        assert_eq!(d.result["permutations"], json!([[1, 2, 3, 4, 5], [1, 2, 4, 3, 5]]));
        assert!(d.text.contains("{(1,2,3,4,5),\n(1,2,4,3,5)}"));
    }

    #[test]
    fn hyperbola_veronese() {
        let p = ProblemFile::parse("degrees:\n 1 -1\n").unwrap();
        let d = cmd_veronese(&p, &[], Parallelism::Parallel).unwrap();
        assert_eq!(d.result["generators"], json!(["T1*T2"]));
    }
}

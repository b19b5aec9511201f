use std::fmt::Write as _;

use crate::field::{Field, RatFunc, Rational};
use crate::graded::GradedPolyRing;
use crate::grading::{AbelianGroup, GroupElement};
use crate::poly::{default_var_names, parse_polynomial, Polynomial};
use crate::{Budget, Error, Result};

/// A parsed problem file. See the module documentation for the format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    /// field parameters; empty means the rationals
    pub params: Vec<String>,
    pub variables: Vec<String>,
    pub free_rows: Vec<Vec<i64>>,
    /// torsion rows with their modulus
    pub torsion_rows: Vec<(Vec<i64>, i64)>,
    /// relations in canonical printed form
    pub relations: Vec<String>,
    pub ample: Option<Vec<i64>>,
    /// generators of a user-supplied GIT chamber, in the free part
    pub chamber: Option<Vec<Vec<i64>>>,
    pub budget: Budget,
}

fn perr(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn ints(line: usize, s: &str) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| perr(line, format!("expected an integer, found `{t}`"))))
        .collect()
}

/// `row` or `row mod m`
fn degree_row(line: usize, s: &str) -> Result<(Vec<i64>, Option<i64>)> {
    match s.split_once("mod") {
        Some((row, m)) => {
            let m: i64 = m.trim().parse().map_err(|_| perr(line, "modulus must be an integer"))?;
            if m < 2 {
                return Err(perr(line, "modulus must be at least 2"));
            }
            Ok((ints(line, row)?, Some(m)))
        }
        None => Ok((ints(line, s)?, None)),
    }
}

fn parse_field(line: usize, v: &str) -> Result<Vec<String>> {
    let v = v.trim();
    if v == "Q" {
        return Ok(Vec::new());
    }
    let inner = v
        .strip_prefix("Q(")
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| perr(line, format!("unknown field `{v}`; use Q or Q(a, b)")))?;
    let params: Vec<String> = inner.split(',').map(|p| p.trim().to_string()).collect();
    if params.iter().any(|p| p.is_empty() || !p.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')) {
        return Err(perr(line, "bad parameter name"));
    }
    Ok(params)
}

fn parse_budget(line: usize, v: &str, b: &mut Budget) -> Result<()> {
    let toks: Vec<&str> = v.split_whitespace().collect();
    if !toks.len().is_multiple_of(2) {
        return Err(perr(line, "budget expects `key value` pairs"));
    }
    for kv in toks.chunks(2) {
        let n: u64 = kv[1].parse().map_err(|_| perr(line, format!("bad budget value `{}`", kv[1])))?;
        match kv[0] {
            "pairs" => b.max_pairs = n as usize,
            "degree" => b.max_degree = n as u32,
            "faces" => b.max_faces = n as usize,
            k => return Err(perr(line, format!("unknown budget key `{k}`"))),
        }
    }
    Ok(())
}

#[derive(PartialEq)]
enum Block {
    None,
    Degrees,
    Relations,
    Chamber,
}

/// Integer rows of a chamber file: either bare rows or a `chamber:` block.
pub fn parse_chamber(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line == "chamber:" {
            continue;
        }
        rows.push(ints(i + 1, line)?);
    }
    if rows.is_empty() {
        return Err(Error::Parse("chamber has no generators".into()));
    }
    Ok(rows)
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        let mut params = Vec::new();
        let mut variables: Option<Vec<String>> = None;
        let mut group_line: Option<(usize, String)> = None;
        let mut free_rows = Vec::new();
        let mut torsion_rows = Vec::new();
        let mut relations_raw: Vec<(usize, String)> = Vec::new();
        let mut ample = None;
        let mut chamber: Option<Vec<Vec<i64>>> = None;
        let mut budget = Budget::default();
        let mut seen_degrees = false;
        let mut block = Block::None;
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let header = line.split_once(':').filter(|(k, _)| {
                !k.is_empty() && k.chars().all(|c| c.is_ascii_lowercase() || c == '_')
            });
            if let Some((key, value)) = header {
                let value = value.trim();
                block = Block::None;
                match key {
                    "field" => params = parse_field(n, value)?,
                    "variables" => variables = Some(value.split_whitespace().map(String::from).collect()),
                    "group" => group_line = Some((n, value.to_string())),
                    "degrees" => {
                        seen_degrees = true;
                        block = Block::Degrees;
                    }
                    "relations" => block = Block::Relations,
                    "ample" => ample = Some(ints(n, value)?),
                    "chamber" => {
                        chamber = Some(Vec::new());
                        block = Block::Chamber;
                    }
                    "budget" => parse_budget(n, value, &mut budget)?,
                    k => return Err(perr(n, format!("unknown section `{k}`"))),
                }
                if !value.is_empty() && matches!(block, Block::Degrees | Block::Relations | Block::Chamber) {
                    return Err(perr(n, format!("`{key}:` starts a block; put its rows on the following lines")));
                }
                continue;
            }
            match block {
                Block::Degrees => match degree_row(n, line)? {
                    (row, None) => {
                        if !torsion_rows.is_empty() {
                            return Err(perr(n, "free rows must come before torsion rows"));
                        }
                        free_rows.push(row);
                    }
                    (row, Some(m)) => torsion_rows.push((row, m)),
                },
                Block::Relations => relations_raw.push((n, line.to_string())),
                Block::Chamber => chamber.as_mut().expect("chamber block").push(ints(n, line)?),
                Block::None => return Err(perr(n, "text outside any section")),
            }
        }
        if !seen_degrees || free_rows.len() + torsion_rows.len() == 0 {
            return Err(Error::Parse("missing `degrees:` block".into()));
        }
        let width = free_rows.first().or(torsion_rows.first().map(|(r, _)| r)).map_or(0, |r| r.len());
        if free_rows.iter().chain(torsion_rows.iter().map(|(r, _)| r)).any(|r| r.len() != width) {
            return Err(Error::Parse("degree rows have different lengths".into()));
        }
        let variables = variables.unwrap_or_else(|| default_var_names(width));
        if variables.len() != width {
            return Err(Error::Parse(format!(
                "{} variables but the degree matrix has {width} columns",
                variables.len()
            )));
        }
        let mut p = ProblemFile {
            params,
            variables,
            free_rows,
            torsion_rows,
            relations: Vec::new(),
            ample,
            chamber,
            budget,
        };
        let group = p.group()?;
        if let Some((n, g)) = group_line {
            if g.replace(' ', "") != group.to_string().replace(' ', "") {
                return Err(perr(n, format!("group `{g}` does not match the degree matrix ({group})")));
            }
        }
        if let Some(a) = &p.ample {
            if a.len() != group.width() {
                return Err(Error::Parse(format!("ample class needs {} entries", group.width())));
            }
        }
        if let Some(c) = &p.chamber {
            if c.is_empty() || c.iter().any(|r| r.len() != group.free_rank()) {
                return Err(Error::Parse(format!("chamber rows need {} entries", group.free_rank())));
            }
        }
        // canonicalize the relations by parsing and printing them
        let mut relations = Vec::new();
        for (n, r) in relations_raw {
            let s = if p.params.is_empty() {
                canonical::<Rational>(&r, &p.variables, &p.params)
            } else {
                canonical::<RatFunc>(&r, &p.variables, &p.params)
            };
            relations.push(s.map_err(|e| perr(n, e))?);
        }
        p.relations = relations;
        Ok(p)
    }

    pub fn group(&self) -> Result<AbelianGroup> {
        AbelianGroup::new(self.free_rows.len(), self.torsion_rows.iter().map(|(_, m)| *m).collect())
    }

    fn column(&self, j: usize) -> Vec<i64> {
        self.free_rows
            .iter()
            .map(|r| r[j])
            .chain(self.torsion_rows.iter().map(|(r, m)| r[j].rem_euclid(*m)))
            .collect()
    }

    pub fn ring(&self) -> Result<GradedPolyRing> {
        let group = self.group()?;
        let degrees = (0..self.variables.len()).map(|j| group.from_coords(&self.column(j))).collect();
        GradedPolyRing::new(self.variables.clone(), self.params.clone(), group, degrees)
    }

    pub fn relations<F: Field>(&self) -> Result<Vec<Polynomial<F>>> {
        self.relations
            .iter()
            .map(|r| parse_polynomial::<F>(r, &self.variables, &self.params).map_err(Error::from))
            .collect()
    }

    pub fn ample_class(&self) -> Result<Option<GroupElement>> {
        self.ample.as_ref().map(|a| self.group().map(|g| g.from_coords(a))).transpose()
    }

    /// Canonical text; parsing it gives back `self`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if self.params.is_empty() {
            s.push_str("field: Q\n");
        } else {
            let _ = writeln!(s, "field: Q({})", self.params.join(", "));
        }
        if let Ok(g) = self.group() {
            let _ = writeln!(s, "group: {g}");
        }
        let _ = writeln!(s, "variables: {}", self.variables.join(" "));
        s.push_str("degrees:\n");
        let join = |r: &[i64]| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        for r in &self.free_rows {
            let _ = writeln!(s, "  {}", join(r));
        }
        for (r, m) in &self.torsion_rows {
            let _ = writeln!(s, "  {} mod {m}", join(r));
        }
        s.push_str("relations:\n");
        for r in &self.relations {
            let _ = writeln!(s, "  {r}");
        }
        if let Some(a) = &self.ample {
            let _ = writeln!(s, "ample: {}", join(a));
        }
        if let Some(c) = &self.chamber {
            s.push_str("chamber:\n");
            for r in c {
                let _ = writeln!(s, "  {}", join(r));
            }
        }
        let b = &self.budget;
        let _ = writeln!(s, "budget: pairs {} degree {} faces {}", b.max_pairs, b.max_degree, b.max_faces);
        s
    }
}

fn canonical<F: Field>(r: &str, vars: &[String], params: &[String]) -> std::result::Result<String, String> {
    let p = parse_polynomial::<F>(r, vars, params).map_err(|e| e.to_string())?;
    if p.is_zero() {
        return Err("relation is zero".into());
    }
    Ok(p.display(vars, params).to_string())
}

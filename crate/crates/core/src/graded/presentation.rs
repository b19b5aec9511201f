use super::{ideal_component, GradedPolyRing};
use crate::field::Field;
use crate::poly::{Monomial, Polynomial};
use crate::Result;

/// Output of [`minimalize_presentation`].
#[derive(Clone, Debug)]
pub struct Presentation<F> {
    pub ring: GradedPolyRing,
    pub gens: Vec<Polynomial<F>>,
    /// Removed variables with the expression substituted for each, written
    /// in the ring as it was just before the removal.
    pub eliminated: Vec<(String, Polynomial<F>)>,
}

/// Removes redundant generators: while some `I_{deg T_i}` contains an
/// element involving `T_i`, solve for `T_i` and substitute.
pub fn minimalize_presentation<F: Field>(ring: &GradedPolyRing, gens: &[Polynomial<F>]) -> Result<Presentation<F>> {
    let mut ring = ring.clone();
    let mut gens: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for g in &gens {
        ring.degree_of(g)?;
    }
    let mut eliminated = Vec::new();
    'outer: loop {
        let r = ring.nvars();
        for i in 0..r {
            let comp = ideal_component(&ring, &gens, &ring.degrees[i])?;
            let ti = Monomial::var(r, i);
            let Some(pos) = comp.monomials.iter().position(|m| *m == ti) else { continue };
            let Some(row) = comp.space.rows.iter().find(|row| !row[pos].is_zero()) else { continue };
            // T_i = -(row - c T_i) / c
            let c = row[pos].clone();
            let mut rest = row.clone();
            rest[pos] = F::zero();
            let expr = comp.polynomial_of(&rest).scale(&c.inv().neg());
            let mut images: Vec<Polynomial<F>> = (0..r).map(|j| Polynomial::var(r, j)).collect();
            images[i] = expr.clone();
            let keep: Vec<usize> = (0..r).filter(|&j| j != i).collect();
            gens = gens
                .iter()
                .map(|g| g.substitute(&images))
                .filter(|g| !g.is_zero())
                .map(|g| g.restrict(&keep).expect("variable eliminated"))
                .collect();
            eliminated.push((ring.names[i].clone(), expr));
            let names = keep.iter().map(|&j| ring.names[j].clone()).collect();
            let degrees = keep.iter().map(|&j| ring.degrees[j].clone()).collect();
            ring = GradedPolyRing::new(names, ring.params.clone(), ring.group.clone(), degrees)?;
            continue 'outer;
        }
        break;
    }
    Ok(Presentation { ring, gens, eliminated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::grading::AbelianGroup;
    use crate::poly::parse_polynomial;

    #[test]
    fn eliminates_chain() {
        let z = GradedPolyRing::from_columns(AbelianGroup::free(1), &[vec![1], vec![1], vec![2], vec![4]]).unwrap();
        let p = |t: &str| parse_polynomial::<Rational>(t, &z.names, &[]).unwrap();
        let out = minimalize_presentation(&z, &[p("T3 - T1*T2"), p("T3^2 - T4")]).unwrap();
        assert!(out.gens.is_empty());
        assert_eq!(out.ring.names, vec!["T1", "T2"]);
        let names: Vec<&str> = out.eliminated.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["T3", "T4"]);
    }

    #[test]
    fn square_relation() {
        let z = GradedPolyRing::from_columns(AbelianGroup::free(1), &[vec![1], vec![2]]).unwrap();
        let f = parse_polynomial::<Rational>("T2 - T1^2", &z.names, &[]).unwrap();
        let out = minimalize_presentation(&z, &[f]).unwrap();
        assert!(out.gens.is_empty());
        assert_eq!(out.ring.nvars(), 1);
    }

    #[test]
    fn minimal_input_unchanged() {
        let s = super::super::tests::quadric_ring();
        let f = parse_polynomial::<Rational>("T1*T2 + T3^2 + T4^2", &s.names, &[]).unwrap();
        let out = minimalize_presentation(&s, std::slice::from_ref(&f)).unwrap();
        assert_eq!(out.gens, vec![f]);
        assert_eq!(out.ring, s);
        assert!(out.eliminated.is_empty());
    }
}

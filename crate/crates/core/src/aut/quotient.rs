use super::rep::{pattern_for, Block, RepBasis};
use super::{Coset, GradedAlgebra, MatrixGroupDescription};
use crate::field::Field;
use crate::groebner::eliminate;
use crate::poly::Polynomial;
use crate::{par, Error, Options, Result};

/// The image of a stabilizer description in `GL(R_w)`: each block is
/// replaced by the quotient `S_w / I_w`, coordinates being the non-pivot
/// monomials.
///
/// When `I` has no elements in the generator degrees the quotient map is the
/// identity and `stab` is returned unchanged.
pub fn quot_rep<F: Field>(
    alg: &GradedAlgebra<F>,
    stab: &MatrixGroupDescription<F>,
    opts: &Options,
) -> Result<MatrixGroupDescription<F>> {
    let comps = alg
        .rep
        .blocks
        .iter()
        .map(|b| alg.component(&b.degree))
        .collect::<Result<Vec<_>>>()?;
    if comps.iter().all(|c| c.dim() == 0) {
        return Ok(stab.clone());
    }
    by_elimination(alg, stab, comps, opts)
}

/// [`quot_rep`] without the shortcut: always eliminates the `GL(S_w)`
/// entries. The coset ideals come out saturated by the determinant.
pub fn quot_rep_by_elimination<F: Field>(
    alg: &GradedAlgebra<F>,
    stab: &MatrixGroupDescription<F>,
    opts: &Options,
) -> Result<MatrixGroupDescription<F>> {
    let comps = alg.rep.blocks.iter().map(|b| alg.component(&b.degree)).collect::<Result<Vec<_>>>()?;
    by_elimination(alg, stab, comps, opts)
}

fn by_elimination<F: Field>(
    alg: &GradedAlgebra<F>,
    stab: &MatrixGroupDescription<F>,
    comps: Vec<crate::graded::Component<F>>,
    opts: &Options,
) -> Result<MatrixGroupDescription<F>> {
    let mut blocks = Vec::new();
    let mut offset = 0;
    // per block: original columns kept, and the complement forms in block
    // coordinates
    let mut kept_cols = Vec::new();
    let mut forms = Vec::new();
    for (b, comp) in alg.rep.blocks.iter().zip(&comps) {
        let keep = comp.space.complement();
        let monomials = keep.iter().map(|&k| b.monomials[k].clone()).collect::<Vec<_>>();
        kept_cols.push(keep.iter().map(|&k| b.offset + k).collect::<Vec<_>>());
        forms.push(comp.space.complement_forms());
        let d = monomials.len();
        blocks.push(Block { degree: b.degree.clone(), monomials, offset });
        offset += d;
    }
    let qrep = RepBasis { blocks, n: offset };
    let cosets = par::try_map(opts.parallelism, &stab.cosets, |coset| {
        let qpattern = match pattern_for(&coset.pattern.sigma, &alg.ring, &qrep) {
            Ok(p) => p,
            // quotient blocks of different size: the coset has no invertible point
            Err(Error::BlockDimMismatch(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let m = coset.nvars();
        let mq = qpattern.entries.len();
        let total = m + 1 + mq;
        let src = coset.pattern.entry_index();
        let embed: Vec<usize> = (0..m).collect();
        let mut gens: Vec<Polynomial<F>> = coset.ideal.iter().map(|g| g.remap(&embed, total)).collect();
        let det = coset.pattern.block_det::<F>(&alg.rep).remap(&embed, total);
        gens.push(Polynomial::one(total).sub(&Polynomial::var(total, m).mul(&det)));
        let qcol_block: Vec<usize> = (0..qrep.n).map(|c| qrep.block_of_column(c)).collect();
        for (e, &(qr, qc)) in qpattern.entries.iter().enumerate() {
            let bi = qcol_block[qc];
            let bj = coset.pattern.target[bi];
            let col = kept_cols[bi][qc - qrep.blocks[bi].offset];
            let form = &forms[bj][qr - qrep.blocks[bj].offset];
            let row0 = alg.rep.blocks[bj].offset;
            let mut entry = Polynomial::zero(total);
            for (k, f) in form.iter().enumerate() {
                if !f.is_zero() {
                    entry = entry.add(&Polynomial::var(total, src[&(row0 + k, col)]).scale(f));
                }
            }
            gens.push(Polynomial::var(total, m + 1 + e).sub(&entry));
        }
        let drop: Vec<usize> = (0..=m).collect();
        let keep: Vec<usize> = (m + 1..total).collect();
        let ideal = eliminate(&gens, total, &drop, &opts.budget)?
            .into_iter()
            .map(|p| p.restrict(&keep).expect("eliminated"))
            .collect();
        Ok(Some(Coset { pattern: qpattern, ideal }))
    })?;
    Ok(MatrixGroupDescription {
        group: stab.group.clone(),
        labels: qrep.labels(&alg.ring),
        basis: qrep,
        params: stab.params.clone(),
        cosets: cosets.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::stab_ideal;
    use crate::field::Rational;
    use crate::graded::GradedPolyRing;
    use crate::grading::{AbelianGroup, GroupHom};
    use crate::groebner::groebner_default;
    use crate::poly::parse_polynomial;

    #[test]
    fn unchanged_without_low_relations() {
        let s = crate::graded::tests::quadric_ring();
        let f = parse_polynomial::<Rational>("T1*T2 + T3^2 + T4^2", &s.names, &[]).unwrap();
        let alg = GradedAlgebra::new(s, vec![f]).unwrap();
        let stab = stab_ideal(&alg, &[GroupHom::identity(alg.group())], &Options::default()).unwrap();
        assert_eq!(quot_rep(&alg, &stab, &Options::default()).unwrap(), stab);
    }

    #[test]
    fn quotient_of_a_plane_by_a_line() {
        // K[T1,T2,T3] in degree 1 modulo T3 - T1: the quotient block is 2x2
        // and the image is all of GL(2).
        let ring = GradedPolyRing::from_columns(AbelianGroup::free(1), &[vec![1], vec![1], vec![1]]).unwrap();
        let f = parse_polynomial::<Rational>("T3 - T1", &ring.names, &[]).unwrap();
        let alg = GradedAlgebra::new(ring, vec![f]).unwrap();
        let opts = Options::default();
        let stab = stab_ideal(&alg, &[GroupHom::identity(alg.group())], &opts).unwrap();
        let q = quot_rep(&alg, &stab, &opts).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(q.cosets.len(), 1);
        let gb = groebner_default(&q.cosets[0].ideal, q.cosets[0].nvars(), &opts.budget).unwrap();
        assert!(gb.is_empty());
    }
}

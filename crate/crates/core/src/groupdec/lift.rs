//! The induced monomial representation through which a certified group factors.

use super::{acts_diagonally, EpimonomialCertificate, GroupInput};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::exactlinalg::{Matrix, Vector};
use crate::spectral::scalar_on;

#[derive(Clone, Debug, PartialEq)]
pub struct MonomialLift {
    /// Monomial matrices of size `d·n`, one per generator.
    pub generators: Vec<Matrix>,
    /// `Ψ` of size `d × d·n` with `Ψ ĝ = g Ψ`.
    pub epimorphism: Matrix,
}

/// Builds the lift from per-piece basis vectors `piece_bases[j]` (spanning piece j)
/// so that basis vector `f_{ijk} = R_i e_{jk}` sits at index `i·d + offset_j + k`.
pub(crate) fn lift_with_bases(g: &GroupInput, cert: &EpimonomialCertificate, piece_bases: &[Vec<Vector>]) -> Result<MonomialLift> {
    let d = g.dim();
    let n = cert.coset_reps.len();
    let f = g.field();
    let pieces = cert.decomposition.pieces();
    let mut offsets = Vec::with_capacity(pieces.len());
    let mut acc = 0;
    for b in piece_bases {
        offsets.push(acc);
        acc += b.len();
    }
    if acc != d {
        return Err(Error::InvalidCertificate("piece bases do not span the space".into()));
    }
    let mut psi_cols: Vec<Vector> = Vec::with_capacity(d * n);
    for (_, r) in &cert.coset_reps {
        for b in piece_bases {
            for e in b {
                psi_cols.push(r.mul_vec(e));
            }
        }
    }
    let psi = Matrix::from_cols(f, &psi_cols, d);
    let mut lifted = Vec::with_capacity(g.generators().len());
    for (gi, gen) in g.generators().iter().enumerate() {
        let row = cert.coset_table.get(gi).ok_or_else(|| Error::InvalidCertificate("missing coset table row".into()))?;
        let mut m = Matrix::zeros(f, d * n, d * n);
        for (i, (_, r)) in cert.coset_reps.iter().enumerate() {
            let t = *row.get(i).ok_or_else(|| Error::InvalidCertificate("short coset table row".into()))?;
            let rt = &cert.coset_reps.get(t).ok_or_else(|| Error::InvalidCertificate("coset index out of range".into()))?.1;
            let c = rt.inverse()?.mul(&gen.mul(r));
            if !acts_diagonally(&c, &cert.decomposition) {
                return Err(Error::InvalidCertificate("coset table is not closed".into()));
            }
            for (j, piece) in pieces.iter().enumerate() {
                let lambda: FieldElement = scalar_on(&c, piece).expect("diagonal element is scalar on pieces");
                for k in 0..piece_bases[j].len() {
                    m.set(t * d + offsets[j] + k, i * d + offsets[j] + k, lambda.clone());
                }
            }
        }
        lifted.push(m);
    }
    Ok(MonomialLift { generators: lifted, epimorphism: psi })
}

/// Monomial lift using the canonical echelon basis of every piece.
pub fn monomial_lift(g: &GroupInput, cert: &EpimonomialCertificate) -> Result<MonomialLift> {
    let bases: Vec<Vec<Vector>> = cert.decomposition.pieces().iter().map(|p| p.basis_vectors()).collect();
    lift_with_bases(g, cert, &bases)
}

#[cfg(test)]
mod tests {
    use super::super::decide_virtually_diagonalizable;
    use super::*;
    use crate::config::SearchConfig;
    use crate::exactfield::NumberField;

    fn check(gens: Vec<Matrix>, expected_dim: usize) {
        let k = NumberField::rationals();
        let n = gens[0].rows();
        let g = GroupInput::new(&k, n, gens).unwrap();
        let c = decide_virtually_diagonalizable(&g, &SearchConfig::default()).unwrap().certificate().cloned().unwrap();
        let lift = monomial_lift(&g, &c).unwrap();
        assert_eq!(lift.epimorphism.cols(), expected_dim);
        assert_eq!(lift.epimorphism.rank(), n);
        for (gh, gm) in lift.generators.iter().zip(g.generators()) {
            assert!(gh.is_monomial());
            assert_eq!(lift.epimorphism.mul(gh), gm.mul(&lift.epimorphism));
        }
    }

    #[test]
    fn lift_examples() {
        let k = NumberField::rationals();
        check(vec![Matrix::from_ints(&k, &[&[2, 0], &[0, 3]])], 2);
        check(vec![Matrix::from_ints(&k, &[&[0, -1], &[1, 0]])], 4);
        check(vec![Matrix::from_ints(&k, &[&[0, 1], &[1, 0]])], 4);
    }
}

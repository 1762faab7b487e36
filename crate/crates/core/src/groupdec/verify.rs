//! Independent re-verification of certificates and refutation witnesses.

use super::{acts_diagonally, monomial_pattern, EpimonomialCertificate, GroupInput, RefutationKind, RefutationWitness};
use crate::error::{Error, Result};
use crate::exactfield::is_root_of_unity;
use crate::exactlinalg::{Decomposition, Matrix};
use crate::spectral::{self, eigenspaces, scalar_on};

fn fail(msg: impl Into<String>) -> Error {
    Error::InvalidCertificate(msg.into())
}

pub fn verify_certificate(g: &GroupInput, cert: &EpimonomialCertificate) -> Result<()> {
    let d = &cert.decomposition;
    if d.is_partial() || d.ambient_dim() != g.dim() {
        return Err(fail("decomposition is not a direct sum of the whole space"));
    }
    for (w, s) in &cert.steady_basis {
        if &g.evaluate(w)? != s {
            return Err(fail(format!("steady word {w} does not evaluate to its matrix")));
        }
        if !spectral::is_steady(s)? || !acts_diagonally(s, d) {
            return Err(fail(format!("steady element {w} is not steady and scalar on every piece")));
        }
    }
    let reps = &cert.coset_reps;
    match reps.first() {
        Some((w, m)) if w.is_empty() && m.is_identity() => {}
        _ => return Err(fail("first coset representative must be the identity")),
    }
    if cert.diagonal_index != reps.len() {
        return Err(fail("diagonal index differs from the number of coset representatives"));
    }
    let mut patterns = Vec::with_capacity(reps.len());
    for (w, m) in reps {
        if &g.evaluate(w)? != m {
            return Err(fail(format!("coset word {w} does not evaluate to its matrix")));
        }
        let p = monomial_pattern(m, d).ok_or_else(|| fail(format!("coset representative {w} does not permute pieces")))?;
        if patterns.contains(&p) {
            return Err(fail(format!("coset representative {w} repeats a coset")));
        }
        patterns.push(p);
    }
    if cert.permutation_images.len() != g.generators().len() || cert.coset_table.len() != g.generators().len() {
        return Err(fail("per-generator data has the wrong length"));
    }
    for (i, gen) in g.generators().iter().enumerate() {
        let p = monomial_pattern(gen, d).ok_or_else(|| fail(format!("generator g{} does not permute pieces", i + 1)))?;
        if p.permutation != cert.permutation_images[i] {
            return Err(fail(format!("permutation image of g{} is wrong", i + 1)));
        }
        if cert.coset_table[i].len() != reps.len() {
            return Err(fail("coset table row has the wrong length"));
        }
        for (j, (_, r)) in reps.iter().enumerate() {
            let t = cert.coset_table[i][j];
            let rt = &reps.get(t).ok_or_else(|| fail("coset table entry out of range"))?.1;
            let c = rt.inverse()?.mul(&gen.mul(r));
            if !acts_diagonally(&c, d) {
                return Err(fail(format!("coset table entry g{}·R{} ↦ R{} is not closed", i + 1, j, t)));
            }
        }
    }
    verify_separating(cert)?;
    Ok(())
}

fn verify_separating(cert: &EpimonomialCertificate) -> Result<()> {
    let d = &cert.decomposition;
    if cert.separating_exponents.len() != cert.steady_basis.len() {
        return Err(fail("separating exponent vector has the wrong length"));
    }
    if d.len() <= 1 {
        return Ok(());
    }
    let n = d.ambient_dim();
    let field = cert.steady_basis[0].1.field().clone();
    let mut m = Matrix::identity(&field, n);
    for ((_, s), &e) in cert.steady_basis.iter().zip(&cert.separating_exponents) {
        m = m.mul(&s.pow(e)?);
    }
    let vals: Option<Vec<_>> = d.pieces().iter().map(|p| scalar_on(&m, p)).collect();
    let vals = vals.ok_or_else(|| fail("separating element is not scalar on the pieces"))?;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            if is_root_of_unity(&(&vals[i] / &vals[j]))?.is_some() {
                return Err(fail("separating element does not separate the pieces"));
            }
        }
    }
    Ok(())
}

pub fn verify_refutation(g: &GroupInput, r: &RefutationWitness) -> Result<()> {
    if g.evaluate(&r.word)? != r.matrix {
        return Err(fail(format!("witness word {} does not evaluate to its matrix", r.word)));
    }
    match r.kind {
        RefutationKind::NonDiagonalizable => {
            if r.matrix.is_diagonalizable()? {
                return Err(fail("witness matrix is diagonalizable"));
            }
        }
        RefutationKind::NotPowerSplitting => {
            if spectral::power_splitting_exponent(&r.matrix)?.is_some() {
                return Err(fail("witness matrix is power-splitting"));
            }
        }
        RefutationKind::IncompatibleSteadyPair => {
            let detail = r.detail.as_ref().ok_or_else(|| fail("missing steady elements"))?;
            if detail.steadies.len() < 2 {
                return Err(fail("need at least two steady elements"));
            }
            let mut d = Decomposition::trivial(g.field(), g.dim());
            for (w, s) in &detail.steadies {
                if &g.evaluate(w)? != s {
                    return Err(fail(format!("steady word {w} does not evaluate to its matrix")));
                }
                if !spectral::is_steady(s)? {
                    return Err(fail(format!("element {w} is not steady")));
                }
                d = d.refine(g.field(), &eigenspaces(s)?)?;
            }
            if !d.is_partial() {
                return Err(fail("joint eigenspaces span the whole space"));
            }
        }
    }
    Ok(())
}

//! Eigenstructure analysis: power-splitting, steadiness, steady exponents,
//! joint eigenspace decompositions and separating elements.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactfield::roots::conjugate_ratio_exponent;
use crate::exactfield::{factor_over_k, is_root_of_unity, splitting_field, Embedding, FieldElement, NumberField};
use crate::exactlinalg::{eigenspace, Decomposition, Matrix, Subspace};

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub element: Matrix,
    pub splitting_field: NumberField,
    pub embedding: Embedding,
    pub eigenvalues: Vec<(FieldElement, usize)>,
    pub diagonalizable: bool,
}

/// Eigenvalues with algebraic multiplicities in a splitting field of the
/// characteristic polynomial.
pub fn spectrum(a: &Matrix) -> Result<SpectrumReport> {
    let cp = a.charpoly()?;
    let diagonalizable = a.is_diagonalizable()?;
    if a.rows() == 0 {
        return Ok(SpectrumReport {
            element: a.clone(),
            splitting_field: a.field().clone(),
            embedding: Embedding::identity(a.field()),
            eigenvalues: Vec::new(),
            diagonalizable,
        });
    }
    let sf = splitting_field(&cp);
    Ok(SpectrumReport {
        element: a.clone(),
        splitting_field: sf.field,
        embedding: sf.embedding,
        eigenvalues: sf.roots,
        diagonalizable,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SteadyAnalysis {
    pub power_splitting_exponent: Option<u64>,
    pub steady_exponent: Option<u64>,
    pub is_steady: bool,
}

/// Per irreducible factor p of the characteristic polynomial: the least m with
/// `λ^m ∈ K` for the roots λ of p, and the common value `λ^m`.
fn factor_powers(a: &Matrix) -> Result<Option<Vec<(u64, FieldElement)>>> {
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    let cp = a.charpoly()?;
    let mut out = Vec::new();
    if a.rows() == 0 {
        return Ok(Some(out));
    }
    for (p, _) in factor_over_k(&cp) {
        let comp = p.companion();
        let Some(m) = conjugate_ratio_exponent(&comp)? else {
            return Ok(None);
        };
        let cm = Matrix::from_rows(a.field(), comp).pow(m as i64)?;
        let c = cm.as_scalar().expect("power of companion with trivial ratios is scalar");
        out.push((m, c));
    }
    Ok(Some(out))
}

/// Least m ≥ 1 with `λ^m ∈ K` for every eigenvalue λ of `A`.
pub fn power_splitting_exponent(a: &Matrix) -> Result<Option<u64>> {
    Ok(factor_powers(a)?.map(|f| f.iter().fold(1u64, |acc, (m, _)| acc.lcm(m))))
}

/// Least N ≥ 1 with `A^N` steady.
pub fn steady_exponent(a: &Matrix) -> Result<Option<u64>> {
    let Some(fp) = factor_powers(a)? else {
        return Ok(None);
    };
    let m0 = fp.iter().fold(1u64, |acc, (m, _)| acc.lcm(m));
    let cs: Vec<FieldElement> = fp.iter().map(|(m, c)| c.pow((m0 / m) as i64)).collect::<Result<_>>()?;
    let mut extra = 1u64;
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if let Some(o) = is_root_of_unity(&(&cs[i] / &cs[j]))? {
                extra = extra.lcm(&o);
            }
        }
    }
    Ok(Some(m0 * extra))
}

/// Eigenvalues in K and no two distinct eigenvalues with a root-of-unity ratio.
pub fn is_steady(a: &Matrix) -> Result<bool> {
    Ok(steady_exponent(a)? == Some(1))
}

pub fn analyze(a: &Matrix) -> Result<SteadyAnalysis> {
    let Some(fp) = factor_powers(a)? else {
        return Ok(SteadyAnalysis { power_splitting_exponent: None, steady_exponent: None, is_steady: false });
    };
    let m0 = fp.iter().fold(1u64, |acc, (m, _)| acc.lcm(m));
    let n = steady_exponent(a)?;
    Ok(SteadyAnalysis { power_splitting_exponent: Some(m0), steady_exponent: n, is_steady: n == Some(1) })
}

/// Distinct eigenvalues of a matrix whose eigenvalues all lie in its field.
pub fn rational_eigenvalues(a: &Matrix) -> Result<Vec<FieldElement>> {
    let cp = a.charpoly()?;
    if a.rows() == 0 {
        return Ok(Vec::new());
    }
    Ok(factor_over_k(&cp)
        .into_iter()
        .filter(|(p, _)| p.degree() == Some(1))
        .map(|(p, _)| -&p.monic().coeff(0))
        .collect())
}

/// Eigenspaces of a matrix for its eigenvalues in K.
pub fn eigenspaces(a: &Matrix) -> Result<Vec<Subspace>> {
    rational_eigenvalues(a)?.iter().map(|l| eigenspace(a, l)).collect()
}

/// Maximal common eigenspace intersections of steady matrices.
pub fn joint_eigenspace_decomposition(steadies: &[Matrix], field: &NumberField, dim: usize) -> Result<Decomposition> {
    let mut d = Decomposition::trivial(field, dim);
    for s in steadies {
        if !is_steady(s)? {
            return Err(Error::NotSteady);
        }
        d = d.refine(field, &eigenspaces(s)?)?;
        if d.is_partial() {
            break;
        }
    }
    Ok(d)
}

/// Scalar by which `A` acts on `piece`, if it acts as a scalar there.
pub fn scalar_on(a: &Matrix, piece: &Subspace) -> Option<FieldElement> {
    let vs = piece.basis_vectors();
    let w = vs.first()?;
    let p = piece.pivots()[0];
    let lambda = &a.mul_vec(w)[p] / &w[p];
    vs.iter().all(|v| a.mul_vec(v) == v.iter().map(|x| x * &lambda).collect::<Vec<_>>()).then_some(lambda)
}

/// Integer vectors with max-norm exactly `r`, in decreasing lexicographic order.
fn shell(len: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; len];
    fn rec(i: usize, r: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            if cur.iter().map(|x| x.abs()).max().unwrap_or(0) == r {
                out.push(cur.clone());
            }
            return;
        }
        for x in (-r..=r).rev() {
            cur[i] = x;
            rec(i + 1, r, cur, out);
        }
    }
    rec(0, r, &mut cur, &mut out);
    out
}

/// A product `∏ A_j^{n_j}` of the steady matrices whose scalars on the pieces
/// of `d` are pairwise distinct with no root-of-unity ratio, found by searching
/// exponent vectors by growing max-norm.
pub fn separating_element(steadies: &[Matrix], d: &Decomposition, radius_cap: u32) -> Result<(Matrix, Vec<i64>)> {
    if d.is_partial() {
        return Err(Error::InvalidDecomposition("partial decomposition".into()));
    }
    if steadies.is_empty() {
        if d.len() <= 1 {
            let f = d.pieces().first().map(|p| p.field().clone()).unwrap_or_else(NumberField::rationals);
            return Ok((Matrix::identity(&f, d.ambient_dim()), Vec::new()));
        }
        return Err(Error::InvalidDecomposition("no steady elements to separate several pieces".into()));
    }
    let field = steadies[0].field().clone();
    let mut scalars: Vec<Vec<FieldElement>> = Vec::new();
    for s in steadies {
        let row: Option<Vec<FieldElement>> = d.pieces().iter().map(|p| scalar_on(s, p)).collect();
        scalars.push(row.ok_or_else(|| Error::InvalidDecomposition("a steady element is not scalar on a piece".into()))?);
    }
    let r_pieces = d.len();
    for r in 0..=radius_cap as i64 {
        'vec: for ev in shell(steadies.len(), r) {
            let vals: Vec<FieldElement> = (0..r_pieces)
                .map(|i| ev.iter().zip(&scalars).fold(field.one(), |acc, (&e, s)| &acc * &s[i].pow(e).unwrap()))
                .collect();
            for i in 0..r_pieces {
                for j in i + 1..r_pieces {
                    if is_root_of_unity(&(&vals[i] / &vals[j]))?.is_some() {
                        continue 'vec;
                    }
                }
            }
            let n = d.ambient_dim();
            let mut m = Matrix::identity(&field, n);
            for (s, &e) in steadies.iter().zip(&ev) {
                m = m.mul(&s.pow(e)?);
            }
            return Ok((m, ev));
        }
    }
    Err(Error::SearchBudgetExceeded(format!("no separating element within radius {radius_cap}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{qpoly, ratio};

    fn q() -> NumberField {
        NumberField::rationals()
    }

    #[test]
    fn power_splitting_examples() {
        let k = q();
        let fib = Matrix::from_ints(&k, &[&[0, 1], &[1, 1]]);
        assert_eq!(power_splitting_exponent(&fib).unwrap(), None);
        let rot = Matrix::from_ints(&k, &[&[0, -1], &[1, 0]]);
        assert_eq!(power_splitting_exponent(&rot).unwrap(), Some(2));
        let d = Matrix::from_ints(&k, &[&[2, 0], &[0, 3]]);
        assert_eq!(power_splitting_exponent(&d).unwrap(), Some(1));
        assert!(matches!(power_splitting_exponent(&Matrix::from_ints(&k, &[&[1, 1], &[1, 1]])), Err(Error::Singular)));
    }

    #[test]
    fn steadiness_examples() {
        let k = q();
        assert!(is_steady(&Matrix::from_ints(&k, &[&[2, 0], &[0, 3]])).unwrap());
        assert!(!is_steady(&Matrix::from_ints(&k, &[&[1, 0], &[0, -1]])).unwrap());
        assert!(is_steady(&Matrix::from_ints(&k, &[&[1, 1], &[0, 1]])).unwrap());
        assert_eq!(steady_exponent(&Matrix::from_ints(&k, &[&[0, -1], &[1, 0]])).unwrap(), Some(2));
        assert_eq!(steady_exponent(&Matrix::from_ints(&k, &[&[2, 0], &[0, -2]])).unwrap(), Some(2));
        assert_eq!(steady_exponent(&Matrix::from_ints(&k, &[&[0, 1], &[1, 1]])).unwrap(), None);
        // eigenvalues i and 2: powers in Q need m = 2, then -1 vs 4 is fine
        let m = Matrix::from_ints(&k, &[&[0, -1, 0], &[1, 0, 0], &[0, 0, 2]]);
        assert_eq!(steady_exponent(&m).unwrap(), Some(2));
        // eigenvalues i and -1: after squaring, -1 vs 1 still differ by a root of unity
        let m = Matrix::from_ints(&k, &[&[0, -1, 0], &[1, 0, 0], &[0, 0, -1]]);
        assert_eq!(steady_exponent(&m).unwrap(), Some(4));
    }

    #[test]
    fn spectrum_examples() {
        let k = q();
        let s = spectrum(&Matrix::from_ints(&k, &[&[0, 1], &[1, 1]])).unwrap();
        assert_eq!(s.splitting_field.degree(), 2);
        assert_eq!(s.eigenvalues.len(), 2);
        let s = spectrum(&Matrix::from_ints(&k, &[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(s.eigenvalues, vec![(k.one(), 2)]);
        assert!(!s.diagonalizable);
    }

    #[test]
    fn joint_decomposition_examples() {
        let k = q();
        let d = joint_eigenspace_decomposition(&[Matrix::from_ints(&k, &[&[2, 0], &[0, 3]])], &k, 2).unwrap();
        assert_eq!(d.len(), 2);
        let d = joint_eigenspace_decomposition(&[Matrix::identity(&k, 2)], &k, 2).unwrap();
        assert_eq!(d.len(), 1);
        let a = Matrix::from_rationals(&k, &[vec![ratio(2, 1), ratio(0, 1)], vec![ratio(0, 1), ratio(1, 2)]]);
        let b = Matrix::from_rationals(&k, &[vec![ratio(2, 1), ratio(-3, 2)], vec![ratio(0, 1), ratio(1, 2)]]);
        let d = joint_eigenspace_decomposition(&[a, b], &k, 2).unwrap();
        assert!(d.is_partial());
        assert_eq!(d.len(), 1);
        let rot = Matrix::from_ints(&k, &[&[0, -1], &[1, 0]]);
        assert!(matches!(joint_eigenspace_decomposition(&[rot], &k, 2), Err(Error::NotSteady)));
    }

    #[test]
    fn separating_examples() {
        let k = q();
        let a = Matrix::from_ints(&k, &[&[2, 0], &[0, 3]]);
        let b = Matrix::from_ints(&k, &[&[3, 0], &[0, 2]]);
        let d = joint_eigenspace_decomposition(&[a.clone(), b.clone()], &k, 2).unwrap();
        let (m, e) = separating_element(std::slice::from_ref(&a), &d, 4).unwrap();
        assert_eq!((m, e), (a.clone(), vec![1]));
        let (_, e) = separating_element(&[a, b], &d, 4).unwrap();
        assert_eq!(e, vec![1, 0]);
    }

    #[test]
    fn steady_over_extension() {
        let l = NumberField::new(qpoly::from_ints(&[-5, 0, 1])).unwrap();
        let fib = Matrix::from_ints(&l, &[&[0, 1], &[1, 1]]);
        assert!(is_steady(&fib).unwrap());
        assert_eq!(eigenspaces(&fib).unwrap().len(), 2);
    }
}

//! Factorization over Q (Zassenhaus) and over number fields (Trager norms).

use std::cmp::Ordering;

use num_traits::Zero;

use super::field::FieldElement;
use super::poly::Polynomial;
use super::qmat::{self, QMat};
use super::qpoly::{self, QPoly};
use super::rational::Rational;
use super::zfactor;

/// Irreducible monic factors with multiplicities, sorted by degree then coefficients.
/// Panics on the zero polynomial.
pub fn factor_over_q(p: &[Rational]) -> Vec<(QPoly, usize)> {
    assert!(qpoly::degree(p).is_some(), "factorization of the zero polynomial");
    let mut out = Vec::new();
    for (part, mult) in qpoly::squarefree_decomposition(p) {
        let (_, prim) = qpoly::primitive_part(&part);
        for f in zfactor::factor_squarefree(&prim) {
            out.push((qpoly::monic(&qpoly::from_bigints(&f)), mult));
        }
    }
    out.sort_by(|a, b| cmp_qpoly(&a.0, &b.0));
    out
}

fn cmp_qpoly(a: &QPoly, b: &QPoly) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn cmp_poly(a: &Polynomial, b: &Polynomial) -> Ordering {
    a.coeffs().len().cmp(&b.coeffs().len()).then_with(|| {
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            match x.canonical_cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// Restriction of scalars of a matrix over K (rows of field elements) to a
/// matrix over Q, replacing every entry by its multiplication matrix.
pub fn restrict_to_q(rows: &[Vec<FieldElement>]) -> QMat {
    let r = rows.len();
    if r == 0 {
        return Vec::new();
    }
    let c = rows[0].len();
    let n = rows[0][0].field().degree();
    let mut out = vec![vec![Rational::zero(); c * n]; r * n];
    for (i, row) in rows.iter().enumerate() {
        for (j, a) in row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let m = a.multiplication_matrix();
            for (bi, mrow) in m.iter().enumerate() {
                for (bj, x) in mrow.iter().enumerate() {
                    out[i * n + bi][j * n + bj] = x.clone();
                }
            }
        }
    }
    out
}

/// Characteristic polynomial over Q of the restriction of scalars of a K-matrix,
/// which is the norm of its K-characteristic polynomial.
pub fn norm_charpoly(rows: &[Vec<FieldElement>]) -> QPoly {
    qmat::charpoly(&restrict_to_q(rows))
}

/// Norm from K[x] to Q[x] of a nonzero polynomial (made monic first).
pub fn norm(p: &Polynomial) -> QPoly {
    if p.degree() == Some(0) {
        return vec![Rational::from_integer(1.into())];
    }
    norm_charpoly(&p.companion())
}

/// Irreducible monic factors over K with multiplicities.
pub fn factor_over_k(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    assert!(!p.is_zero(), "factorization of the zero polynomial");
    let k = p.field().clone();
    if let (true, Some(q)) = (k.is_rational(), p.to_rational()) {
        return factor_over_q(&q).into_iter().map(|(f, m)| (Polynomial::from_rationals(&k, &f), m)).collect();
    }
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in trager(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    out
}

/// Shift sequence 0, 1, -1, 2, -2, ...
pub(crate) fn shift_sequence() -> impl Iterator<Item = i64> {
    (0i64..).map(|i| if i % 2 == 1 { i / 2 + 1 } else { -(i / 2) })
}

fn trager(g: &Polynomial) -> Vec<Polynomial> {
    if g.degree() == Some(1) {
        return vec![g.monic()];
    }
    let k = g.field().clone();
    let theta = k.generator();
    for s in shift_sequence() {
        let st = theta.scale(&Rational::from_integer(s.into()));
        let gs = g.shift(&-&st);
        let n = norm(&gs);
        if qpoly::degree(&qpoly::gcd(&n, &qpoly::derivative(&n))) != Some(0) {
            continue;
        }
        let factors = factor_over_q(&n);
        if factors.len() == 1 {
            return vec![g.monic()];
        }
        let mut out = Vec::new();
        for (nj, _) in factors {
            let h = gs.gcd(&Polynomial::from_rationals(&k, &nj));
            if h.degree().unwrap_or(0) > 0 {
                out.push(h.shift(&st));
            }
        }
        return out;
    }
    unreachable!()
}

/// Whether `p` is irreducible over its coefficient field.
pub fn is_irreducible(p: &Polynomial) -> bool {
    let f = factor_over_k(p);
    f.len() == 1 && f[0].1 == 1
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::field::NumberField;
    use crate::exactfield::rational::ratio;

    fn expand(factors: &[(QPoly, usize)]) -> QPoly {
        factors.iter().fold(qpoly::from_ints(&[1]), |acc, (f, m)| qpoly::mul(&acc, &qpoly::pow(f, *m as u32)))
    }

    #[test]
    fn over_q_examples() {
        assert_eq!(
            factor_over_q(&qpoly::from_ints(&[-1, 0, 1])),
            vec![(qpoly::from_ints(&[-1, 1]), 1), (qpoly::from_ints(&[1, 1]), 1)]
        );
        assert_eq!(factor_over_q(&qpoly::from_ints(&[-1, -1, 1])).len(), 1);
        let f = factor_over_q(&qpoly::from_ints(&[-1, 0, 0, 0, 1]));
        assert_eq!(f.len(), 3);
        assert_eq!(expand(&f), qpoly::from_ints(&[-1, 0, 0, 0, 1]));
    }

    #[test]
    fn over_q_rational_coefficients_and_multiplicity() {
        // (x - 1/2)^2 (x^2 + 1/3)
        let a = qpoly::pow(&qpoly::x_minus(&ratio(1, 2)), 2);
        let b = vec![ratio(1, 3), Rational::zero(), ratio(1, 1)];
        let p = qpoly::scale(&qpoly::mul(&a, &b), &ratio(7, 5));
        let f = factor_over_q(&p);
        assert_eq!(f, vec![(qpoly::x_minus(&ratio(1, 2)), 2), (b, 1)]);
    }

    #[test]
    fn golden_polynomial_splits_over_sqrt5() {
        let k = NumberField::new(qpoly::from_ints(&[-5, 0, 1])).unwrap();
        let p = Polynomial::from_ints(&k, &[-1, -1, 1]);
        let f = factor_over_k(&p);
        assert_eq!(f.len(), 2);
        for (g, m) in &f {
            assert_eq!(*m, 1);
            assert_eq!(g.degree(), Some(1));
            let root = -&g.coeff(0);
            assert!(p.eval(&root).is_zero());
        }
    }

    #[test]
    fn x2_plus_1_over_gaussian() {
        let k = NumberField::new(qpoly::from_ints(&[1, 0, 1])).unwrap();
        let f = factor_over_k(&Polynomial::from_ints(&k, &[1, 0, 1]));
        let t = k.generator();
        let mut roots: Vec<FieldElement> = f.iter().map(|(g, _)| -&g.coeff(0)).collect();
        roots.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(roots, vec![-&t, t]);
    }

    #[test]
    fn irreducible_stays_irreducible_over_extension() {
        let k = NumberField::new(qpoly::from_ints(&[-2, 0, 1])).unwrap();
        assert!(is_irreducible(&Polynomial::from_ints(&k, &[-3, 0, 1])));
        assert!(!is_irreducible(&Polynomial::from_ints(&k, &[4, 0, -4, 0, 1])));
    }
}

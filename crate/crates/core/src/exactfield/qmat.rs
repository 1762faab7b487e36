//! Small dense matrices over Q backing norms and regular representations.

use num_traits::{One, Zero};

use super::qpoly::{self, QPoly};
use super::rational::Rational;

pub type QMat = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> QMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = &a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += x * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &QMat, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

/// Characteristic polynomial via reduction to Hessenberg form.
pub fn charpoly(a: &QMat) -> QPoly {
    let n = a.len();
    let mut h = a.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(piv) = (c + 1..n).find(|&i| !h[i][c].is_zero()) else {
            continue;
        };
        if piv != c + 1 {
            h.swap(piv, c + 1);
            for row in h.iter_mut() {
                row.swap(piv, c + 1);
            }
        }
        let pivot = h[c + 1][c].clone();
        for j in c + 2..n {
            if h[j][c].is_zero() {
                continue;
            }
            let u = &h[j][c] / &pivot;
            for k in 0..n {
                let t = &u * &h[c + 1][k];
                h[j][k] -= t;
            }
            for row in h.iter_mut() {
                let t = &u * &row[j];
                row[c + 1] += t;
            }
        }
    }
    let mut polys: Vec<QPoly> = vec![vec![Rational::one()]];
    for m in 0..n {
        let mut p = qpoly::mul(&polys[m], &qpoly::x_minus(&h[m][m]));
        let mut prod = Rational::one();
        for i in (0..m).rev() {
            prod *= &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let coef = &h[i][m] * &prod;
            p = qpoly::sub(&p, &qpoly::scale(&polys[i], &coef));
        }
        polys.push(p);
    }
    polys.pop().unwrap()
}

/// Inverse by Gauss–Jordan elimination; `None` if singular.
pub fn inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut m: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(piv, c);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..2 * n {
                    let t = &f * &m[c][k];
                    m[i][k] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coefficients expressing `target` in the span of `vectors`, if possible.
pub fn solve_in_span(vectors: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = vectors.len();
    let n = target.len();
    // augmented system: columns are the vectors, rhs target
    let mut m: QMat = (0..n)
        .map(|i| {
            let mut r: Vec<Rational> = vectors.iter().map(|v| v[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..k {
        let Some(piv) = (row..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, row);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=k {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][k].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::rat;

    fn q(rows: &[&[i64]]) -> QMat {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn charpoly_fibonacci() {
        assert_eq!(charpoly(&q(&[&[0, 1], &[1, 1]])), qpoly::from_ints(&[-1, -1, 1]));
    }

    #[test]
    fn charpoly_companion_roundtrip() {
        // companion of x^4 - 3x^3 + 2x + 7
        let c = q(&[&[0, 0, 0, -7], &[1, 0, 0, -2], &[0, 1, 0, 0], &[0, 0, 1, 3]]);
        assert_eq!(charpoly(&c), qpoly::from_ints(&[7, 2, 0, -3, 1]));
    }

    #[test]
    fn charpoly_needs_pivot_swap() {
        let a = q(&[&[1, 0, 2], &[0, 3, 1], &[5, 1, 0]]);
        // det(xI - A) = x^3 - 4x^2 - 8x + 31
        assert_eq!(charpoly(&a), qpoly::from_ints(&[31, -8, -4, 1]));
    }

    #[test]
    fn inverse_and_solve() {
        let a = q(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(2));
        assert!(inverse(&q(&[&[1, 2], &[2, 4]])).is_none());
        let x = solve_in_span(&[vec![rat(1), rat(0)], vec![rat(1), rat(1)]], &[rat(3), rat(2)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(2)]);
        assert!(solve_in_span(&[vec![rat(1), rat(1)]], &[rat(1), rat(0)]).is_none());
    }
}

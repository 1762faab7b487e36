//! Cyclotomic polynomials and root-of-unity detection.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::norm_charpoly;
use super::field::FieldElement;
use super::qmat;
use super::qpoly::{self, QPoly};
use super::rational::Rational;
use crate::error::{Error, Result};

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    n
}

fn substitute_power(p: &[Rational], k: usize) -> QPoly {
    let mut out = vec![Rational::zero(); (p.len() - 1) * k + 1];
    for (i, c) in p.iter().enumerate() {
        out[i * k] = c.clone();
    }
    out
}

/// The n-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> QPoly {
    static CACHE: OnceLock<Mutex<HashMap<u64, QPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic index must be positive");
    let p = if n == 1 {
        qpoly::from_ints(&[-1, 1])
    } else {
        let q = smallest_prime_factor(n);
        let m = n / q;
        if m.is_multiple_of(q) {
            substitute_power(&cyclotomic(m), q as usize)
        } else {
            let base = cyclotomic(m);
            qpoly::divrem(&substitute_power(&base, q as usize), &base).0
        }
    };
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Indices n (ascending) with Euler phi(n) at most `bound`.
pub fn cyclotomic_indices(bound: usize) -> Vec<u64> {
    // phi(n) >= sqrt(n / 2)
    let max = 2 * (bound as u64) * (bound as u64) + 2;
    (1..=max).filter(|&n| euler_phi(n) as usize <= bound).collect()
}

/// Minimal polynomial over Q of a field element.
pub fn min_poly_over_q(a: &FieldElement) -> QPoly {
    let mut powers: Vec<Vec<Rational>> = Vec::new();
    let mut cur = a.field().one();
    loop {
        if let Some(c) = qmat::solve_in_span(&powers, cur.coords()) {
            let mut p: QPoly = c.iter().map(|x| -x).collect();
            p.push(Rational::one());
            return p;
        }
        powers.push(cur.coords().to_vec());
        cur = &cur * a;
    }
}

fn is_integral_unit_poly(p: &[Rational]) -> bool {
    p.iter().all(|c| c.is_integer()) && p[0].abs().is_one()
}

/// Least n with `a^n = 1`, if `a` is a root of unity.
pub fn is_root_of_unity(a: &FieldElement) -> Result<Option<u64>> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let p = min_poly_over_q(a);
    if !is_integral_unit_poly(&p) {
        return Ok(None);
    }
    let k = p.len() - 1;
    Ok(cyclotomic_indices(k)
        .into_iter()
        .filter(|&n| euler_phi(n) as usize == k)
        .find(|&n| cyclotomic(n) == p))
}

/// If every root of `q` is a root of unity, returns the lcm of their orders.
pub fn unit_root_exponent(q: &[Rational]) -> Option<u64> {
    let q = qpoly::monic(q);
    let mut s = qpoly::divrem(&q, &qpoly::gcd(&q, &qpoly::derivative(&q))).0;
    if !is_integral_unit_poly(&s) {
        return None;
    }
    let mut order = 1u64;
    for n in cyclotomic_indices(s.len() - 1) {
        if s.len() == 1 {
            break;
        }
        let phi = cyclotomic(n);
        if phi.len() > s.len() {
            continue;
        }
        let (quo, r) = qpoly::divrem(&s, &phi);
        if r.is_empty() {
            s = quo;
            order = order.lcm(&n);
        }
    }
    (s.len() == 1).then_some(order)
}

fn k_inverse(m: &[Vec<FieldElement>]) -> Option<Vec<Vec<FieldElement>>> {
    let n = m.len();
    let f = m[0][0].field().clone();
    let mut a: Vec<Vec<FieldElement>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(piv, c);
        let inv = a[c][c].inv().ok()?;
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let fac = a[i][c].clone();
                for k in 0..2 * n {
                    let t = &fac * &a[c][k];
                    a[i][k] = &a[i][k] - &t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// For an invertible square matrix over K, the lcm of the multiplicative orders of
/// all eigenvalue ratios if every ratio is a root of unity, else `None`.
///
/// The ratios are the eigenvalues of `M ⊗ M^{-1}`; their conjugates over Q are
/// the roots of the norm of its characteristic polynomial.
pub fn conjugate_ratio_exponent(m: &[Vec<FieldElement>]) -> Result<Option<u64>> {
    let n = m.len();
    if n <= 1 {
        return Ok(Some(1));
    }
    let inv = k_inverse(m).ok_or(Error::Singular)?;
    let mut kron = vec![vec![m[0][0].field().zero(); n * n]; n * n];
    for i in 0..n {
        for j in 0..n {
            if m[i][j].is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    if !inv[k][l].is_zero() {
                        kron[i * n + k][j * n + l] = &m[i][j] * &inv[k][l];
                    }
                }
            }
        }
    }
    Ok(unit_root_exponent(&norm_charpoly(&kron)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::field::NumberField;
    use crate::exactfield::rational::ratio;

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1), qpoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(4), qpoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), qpoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), qpoly::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(9), qpoly::from_ints(&[1, 0, 0, 1, 0, 0, 1]));
        // product over divisors of 12 is x^12 - 1
        let prod = [1, 2, 3, 4, 6, 12].iter().fold(qpoly::from_ints(&[1]), |a, &d| qpoly::mul(&a, &cyclotomic(d)));
        let mut x12 = qpoly::from_ints(&[-1]);
        x12.resize(13, Rational::zero());
        x12[12] = Rational::one();
        assert_eq!(prod, x12);
    }

    #[test]
    fn roots_of_unity() {
        let q = NumberField::rationals();
        assert_eq!(is_root_of_unity(&q.one()).unwrap(), Some(1));
        assert_eq!(is_root_of_unity(&q.from_int(-1)).unwrap(), Some(2));
        assert_eq!(is_root_of_unity(&q.from_int(2)).unwrap(), None);
        assert!(is_root_of_unity(&q.zero()).is_err());
        let k = NumberField::new(qpoly::from_ints(&[-5, 0, 1])).unwrap();
        let phi = (&k.one() + &k.generator()).scale(&ratio(1, 2));
        assert_eq!(is_root_of_unity(&phi).unwrap(), None);
        let c3 = NumberField::new(qpoly::from_ints(&[1, 1, 1])).unwrap();
        let w = c3.generator();
        assert_eq!(is_root_of_unity(&w).unwrap(), Some(3));
        assert_eq!(is_root_of_unity(&-&w).unwrap(), Some(6));
    }

    #[test]
    fn ratio_exponents() {
        let q = NumberField::rationals();
        let e = |rows: &[&[i64]]| -> Vec<Vec<FieldElement>> {
            rows.iter().map(|r| r.iter().map(|&x| q.from_int(x)).collect()).collect()
        };
        assert_eq!(conjugate_ratio_exponent(&e(&[&[0, -1], &[1, 0]])).unwrap(), Some(2));
        assert_eq!(conjugate_ratio_exponent(&e(&[&[0, 1], &[1, 1]])).unwrap(), None);
        assert_eq!(conjugate_ratio_exponent(&e(&[&[2, 0], &[0, -2]])).unwrap(), Some(2));
        assert_eq!(conjugate_ratio_exponent(&e(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])).unwrap(), Some(3));
        assert!(conjugate_ratio_exponent(&e(&[&[1, 2], &[2, 4]])).is_err());
    }
}

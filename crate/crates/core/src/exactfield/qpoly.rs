//! Dense univariate polynomials over Q as plain coefficient vectors,
//! lowest degree first. The zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

pub type QPoly = Vec<Rational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn trimmed(mut p: QPoly) -> QPoly {
    trim(&mut p);
    p
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn from_ints(c: &[i64]) -> QPoly {
    trimmed(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
}

pub fn x_minus(a: &Rational) -> QPoly {
    vec![-a.clone(), Rational::one()]
}

pub fn add(a: &[Rational], b: &[Rational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    trimmed(out)
}

pub fn neg(a: &[Rational]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QPoly {
    add(a, &neg(b))
}

pub fn scale(a: &[Rational], s: &Rational) -> QPoly {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c * s).collect()
}

pub fn mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

pub fn pow(a: &[Rational], mut e: u32) -> QPoly {
    let mut base = a.to_vec();
    let mut acc = vec![Rational::one()];
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// Euclidean division. Panics on a zero divisor.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trimmed(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lead_inv;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        trim(&mut r);
    }
    (trimmed(q), r)
}

pub fn rem(a: &[Rational], b: &[Rational]) -> QPoly {
    divrem(a, b).1
}

pub fn monic(a: &[Rational]) -> QPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = a[d].recip();
            a[..=d].iter().map(|c| c * &inv).collect()
        }
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(a: &[Rational], b: &[Rational]) -> QPoly {
    let mut x = trimmed(a.to_vec());
    let mut y = trimmed(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (trimmed(a.to_vec()), trimmed(b.to_vec()));
    let (mut s0, mut s1) = (vec![Rational::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match degree(&r0) {
        None => (r0, s0, t0),
        Some(d) => {
            let inv = r0[d].recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn derivative(a: &[Rational]) -> QPoly {
    trimmed(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub fn eval(a: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// `a(x + shift)`.
pub fn shift(a: &[Rational], s: &Rational) -> QPoly {
    let mut acc: QPoly = Vec::new();
    let lin = vec![s.clone(), Rational::one()];
    for c in a.iter().rev() {
        acc = add(&mul(&acc, &lin), std::slice::from_ref(c));
    }
    acc
}

/// Splits `a` into `(content, primitive integer polynomial)` with positive
/// leading coefficient, so that `a = content * primitive`.
pub fn primitive_part(a: &[Rational]) -> (Rational, Vec<BigInt>) {
    let a = trimmed(a.to_vec());
    if a.is_empty() {
        return (Rational::zero(), Vec::new());
    }
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = a.iter().map(|c| (c * &den).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    let prim = ints.iter().map(|c| c / &g).collect();
    (Rational::new(g, den), prim)
}

pub fn from_bigints(a: &[BigInt]) -> QPoly {
    trimmed(a.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Yun's squarefree decomposition: returns `(factor, multiplicity)` with
/// monic, pairwise coprime, squarefree factors.
pub fn squarefree_decomposition(a: &[Rational]) -> Vec<(QPoly, usize)> {
    let a = monic(a);
    let mut out = Vec::new();
    if degree(&a).unwrap_or(0) == 0 {
        return out;
    }
    let da = derivative(&a);
    let b = gcd(&a, &da);
    let mut c = divrem(&a, &b).0;
    let mut d = sub(&divrem(&da, &b).0, &derivative(&c));
    let mut i = 1;
    while degree(&c).unwrap_or(0) > 0 {
        let g = gcd(&c, &d);
        if degree(&g).unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        c = divrem(&c, &g).0;
        d = sub(&divrem(&d, &g).0, &derivative(&c));
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = from_ints(&[1, 2, 3, 4, 5]);
        let b = from_ints(&[-1, 0, 2]);
        let (q, r) = divrem(&a, &b);
        assert_eq!(add(&mul(&q, &b), &r), a);
        assert!(degree(&r).unwrap() < 2);
    }

    #[test]
    fn squarefree_of_repeated_factor() {
        // (x-1)^2 (x+2)
        let p = mul(&pow(&from_ints(&[-1, 1]), 2), &from_ints(&[2, 1]));
        let sf = squarefree_decomposition(&p);
        assert_eq!(sf, vec![(from_ints(&[2, 1]), 1), (from_ints(&[-1, 1]), 2)]);
    }

    #[test]
    fn xgcd_bezout() {
        let a = from_ints(&[-1, 0, 1]);
        let b = from_ints(&[1, 1, 1]);
        let (g, s, t) = xgcd(&a, &b);
        assert_eq!(g, from_ints(&[1]));
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), g);
    }

    #[test]
    fn primitive_part_signs() {
        let p = vec![Rational::new(2.into(), 3.into()), Rational::new((-4).into(), 3.into())];
        let (c, q) = primitive_part(&p);
        assert_eq!(q, vec![BigInt::from(-1), BigInt::from(2)]);
        assert_eq!(c, Rational::new((-2).into(), 3.into()));
    }
}

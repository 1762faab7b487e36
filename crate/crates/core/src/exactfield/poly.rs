//! Univariate polynomials with coefficients in a number field.

use std::fmt;

use super::field::{FieldElement, NumberField};
use super::qpoly::QPoly;
use super::rational::Rational;

/// Coefficients lowest degree first; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: NumberField,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &NumberField, coeffs: Vec<FieldElement>) -> Self {
        let mut p = Polynomial { field: field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn zero(field: &NumberField) -> Self {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &NumberField) -> Self {
        Polynomial { field: field.clone(), coeffs: vec![field.one()] }
    }

    pub fn constant(c: FieldElement) -> Self {
        let f = c.field().clone();
        Polynomial::new(&f, vec![c])
    }

    /// `x - a`
    pub fn linear(a: &FieldElement) -> Self {
        let f = a.field().clone();
        Polynomial { coeffs: vec![-a, f.one()], field: f }
    }

    pub fn from_rationals(field: &NumberField, c: &[Rational]) -> Self {
        Polynomial::new(field, c.iter().map(|q| field.from_rational(q.clone())).collect())
    }

    pub fn from_ints(field: &NumberField, c: &[i64]) -> Self {
        Polynomial::new(field, c.iter().map(|&q| field.from_int(q)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    /// Coefficients as rationals when every coefficient lies in Q.
    pub fn to_rational(&self) -> Option<QPoly> {
        self.coeffs.iter().map(|c| c.as_rational().cloned()).collect()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(&self.field, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(&self.field, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Polynomial::new(&self.field, out)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Panics on a zero divisor.
    pub fn divrem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = d.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Polynomial::zero(&self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = &r[k] * &inv;
            let s = k - dd;
            for i in 0..=dd {
                if !d.coeffs[i].is_zero() {
                    r[s + i] = &r[s + i] - &(&c * &d.coeffs[i]);
                }
            }
            q[s] = c;
        }
        r.truncate(dd);
        (Polynomial::new(&self.field, q), Polynomial::new(&self.field, r))
    }

    pub fn rem(&self, d: &Polynomial) -> Polynomial {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            &self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(&Rational::from_integer(i.into()))).collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `p(x + s)`.
    pub fn shift(&self, s: &FieldElement) -> Polynomial {
        let lin = Polynomial::new(&self.field, vec![s.clone(), self.field.one()]);
        let mut acc = Polynomial::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Polynomial::constant(c.clone()));
        }
        acc
    }

    /// Applies a coefficient map into another field.
    pub fn map(&self, field: &NumberField, f: impl Fn(&FieldElement) -> FieldElement) -> Polynomial {
        Polynomial::new(field, self.coeffs.iter().map(f).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Yun's squarefree decomposition into monic coprime parts with multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(Polynomial, usize)> {
        let a = self.monic();
        let mut out = Vec::new();
        if a.degree().unwrap_or(0) == 0 {
            return out;
        }
        let da = a.derivative();
        let b = a.gcd(&da);
        let mut c = a.divrem(&b).0;
        let mut d = da.divrem(&b).0.sub(&c.derivative());
        let mut i = 1;
        while c.degree().unwrap_or(0) > 0 {
            let g = c.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            c = c.divrem(&g).0;
            d = d.divrem(&g).0.sub(&c.derivative());
            i += 1;
        }
        out
    }

    /// Companion matrix (as rows) of a monic polynomial.
    pub fn companion(&self) -> Vec<Vec<FieldElement>> {
        let p = self.monic();
        let n = p.degree().expect("companion of zero polynomial");
        let mut m = vec![vec![self.field.zero(); n]; n];
        for i in 1..n {
            m[i][i - 1] = self.field.one();
        }
        for i in 0..n {
            m[i][n - 1] = -&p.coeffs[i];
        }
        m
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let cs = c.to_string();
            let cs = if c.as_rational().is_none() { format!("({cs})") } else { cs };
            terms.push(if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else {
                format!("{cs}*{mono}")
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::qpoly;

    #[test]
    fn division_and_gcd() {
        let q = NumberField::rationals();
        let a = Polynomial::from_ints(&q, &[-1, 0, 1]);
        let b = Polynomial::from_ints(&q, &[1, 1]);
        let (quo, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(quo, Polynomial::from_ints(&q, &[-1, 1]));
        assert_eq!(a.gcd(&Polynomial::from_ints(&q, &[1, 2, 1])), b);
    }

    #[test]
    fn squarefree_over_extension() {
        let k = NumberField::new(qpoly::from_ints(&[1, 0, 1])).unwrap();
        let i = k.generator();
        let lin = Polynomial::linear(&i);
        let p = lin.pow(3).mul(&Polynomial::linear(&-&i));
        let sf = p.squarefree_decomposition();
        assert_eq!(sf, vec![(Polynomial::linear(&-&i), 1), (lin, 3)]);
    }

    #[test]
    fn shift_and_eval() {
        let q = NumberField::rationals();
        let p = Polynomial::from_ints(&q, &[1, 2, 3]);
        let s = q.from_int(2);
        assert_eq!(p.shift(&s).eval(&q.from_int(1)), p.eval(&q.from_int(3)));
    }
}

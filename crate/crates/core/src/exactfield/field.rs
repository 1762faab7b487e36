//! Number fields Q[x]/(f) and their elements in power-basis coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::qmat::QMat;
use super::qpoly::{self, QPoly};
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Debug)]
struct FieldData {
    min_poly: QPoly,
    /// `reduction[k]` holds the coordinates of `x^(n + k)` modulo the minimal polynomial.
    reduction: Vec<Vec<Rational>>,
}

/// The field Q[x]/(min_poly). Degree-one presentations are normalized to Q
/// with minimal polynomial `x`.
#[derive(Clone, Debug)]
pub struct NumberField(Arc<FieldData>);

impl NumberField {
    pub fn rationals() -> Self {
        Self::from_irreducible(vec![Rational::zero(), Rational::one()])
    }

    /// Validates the polynomial (monic, degree at least one, irreducible).
    pub fn new(min_poly: QPoly) -> Result<Self> {
        let p = qpoly::trimmed(min_poly);
        let Some(deg) = qpoly::degree(&p) else {
            return Err(Error::InvalidMinimalPolynomial("zero polynomial".into()));
        };
        if deg == 0 {
            return Err(Error::InvalidMinimalPolynomial("constant polynomial".into()));
        }
        if !p[deg].is_one() {
            return Err(Error::InvalidMinimalPolynomial("polynomial is not monic".into()));
        }
        if deg == 1 {
            return Ok(Self::rationals());
        }
        let factors = super::factor::factor_over_q(&p);
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::ReduciblePolynomial);
        }
        Ok(Self::from_irreducible(p))
    }

    /// Builds a field from a polynomial already known to be monic and irreducible.
    pub(crate) fn from_irreducible(min_poly: QPoly) -> Self {
        let n = min_poly.len() - 1;
        if n == 1 && !min_poly[0].is_zero() {
            return Self::rationals();
        }
        let mut reduction = Vec::with_capacity(n.saturating_sub(1));
        // x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
        let mut cur: Vec<Rational> = min_poly[..n].iter().map(|c| -c).collect();
        for _ in 0..n.saturating_sub(1) {
            reduction.push(cur.clone());
            let top = cur[n - 1].clone();
            let mut next = vec![Rational::zero(); n];
            for i in 1..n {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..n {
                    next[i] -= &top * &min_poly[i];
                }
            }
            cur = next;
        }
        NumberField(Arc::new(FieldData { min_poly, reduction }))
    }

    pub fn degree(&self) -> usize {
        self.0.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.0.min_poly
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coords: vec![Rational::zero(); self.degree()] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> FieldElement {
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[0] = q;
        FieldElement { field: self.clone(), coords }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(Rational::from_integer(n.into()))
    }

    /// The class of `x`; equals the rational number 0 when the field is Q.
    pub fn generator(&self) -> FieldElement {
        if self.is_rational() {
            return self.zero();
        }
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[1] = Rational::one();
        FieldElement { field: self.clone(), coords }
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::DimensionMismatch { expected: self.degree(), found: coords.len() });
        }
        Ok(FieldElement { field: self.clone(), coords })
    }

    /// Reduces an arbitrary polynomial in the generator.
    pub fn from_poly(&self, p: &[Rational]) -> FieldElement {
        let n = self.degree();
        let mut coords = vec![Rational::zero(); n];
        for (k, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < n {
                coords[k] += c;
            } else {
                let r = self.power_coords(k);
                for i in 0..n {
                    if !r[i].is_zero() {
                        coords[i] += c * &r[i];
                    }
                }
            }
        }
        FieldElement { field: self.clone(), coords }
    }

    fn power_coords(&self, k: usize) -> Vec<Rational> {
        let n = self.degree();
        if k < n {
            let mut v = vec![Rational::zero(); n];
            v[k] = Rational::one();
            return v;
        }
        if k - n < self.0.reduction.len() {
            return self.0.reduction[k - n].clone();
        }
        let mut acc = self.one();
        let g = if n == 1 { self.from_rational(-self.0.min_poly[0].clone()) } else { self.generator() };
        for _ in 0..k {
            acc = &acc * &g;
        }
        acc.coords
    }

    pub fn same(&self, other: &NumberField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.min_poly == other.0.min_poly
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for NumberField {}

impl Hash for NumberField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.min_poly.hash(state);
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "Q");
        }
        write!(f, "Q[x]/({})", format_qpoly(self.min_poly(), "x"))
    }
}

pub fn format_qpoly(p: &[Rational], var: &str) -> String {
    let mut terms = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let s = if mono.is_empty() {
            format_rational(c)
        } else if c.is_one() {
            mono
        } else if *c == -Rational::one() {
            format!("-{mono}")
        } else {
            format!("{}*{mono}", format_rational(c))
        };
        terms.push(s);
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.join(" + ").replace("+ -", "- ")
}

#[derive(Clone, Debug)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn check(&self, other: &FieldElement) {
        assert!(self.field.same(&other.field), "field mismatch in element arithmetic");
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.field.is_rational() {
            return Ok(self.field.from_rational(self.coords[0].recip()));
        }
        let (_, s, _) = qpoly::xgcd(&qpoly::trimmed(self.coords.clone()), self.field.min_poly());
        Ok(self.field.from_poly(&s))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| c * q).collect() }
    }

    /// Matrix of multiplication by `self` on the power basis (column convention).
    pub fn multiplication_matrix(&self) -> QMat {
        let n = self.field.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        let x = self.field.generator();
        for k in 0..n {
            if k > 0 {
                cur = &cur * &x;
            }
            cols.push(cur.coords.clone());
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Deterministic total order on coordinates (for canonical forms).
    pub fn canonical_cmp(&self, other: &FieldElement) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field.same(&other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", format_rational(q));
        }
        write!(f, "{}", format_qpoly(&self.coords, "θ"))
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let n = self.coords.len();
        if n == 1 {
            return FieldElement { field: self.field.clone(), coords: vec![&self.coords[0] * &rhs.coords[0]] };
        }
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coords: Vec<Rational> = prod[..n].to_vec();
        for (k, c) in prod[n..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.field.0.reduction[k].iter().enumerate() {
                if !r.is_zero() {
                    coords[i] += c * r;
                }
            }
        }
        FieldElement { field: self.field.clone(), coords }
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; use [`FieldElement::inv`] for a checked variant.
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self * &rhs.inv().expect("division by zero field element")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { (&self).$m(&rhs) }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::{rat, ratio};

    fn sqrt5() -> NumberField {
        NumberField::new(qpoly::from_ints(&[-5, 0, 1])).unwrap()
    }

    #[test]
    fn creation_and_rejection() {
        assert!(NumberField::new(qpoly::from_ints(&[-1, 1])).unwrap().is_rational());
        assert_eq!(sqrt5().degree(), 2);
        assert!(matches!(NumberField::new(qpoly::from_ints(&[-1, 0, 1])), Err(Error::ReduciblePolynomial)));
        assert!(NumberField::new(qpoly::from_ints(&[-1, 0, 2])).is_err());
    }

    #[test]
    fn golden_ratio_arithmetic() {
        let k = sqrt5();
        let s = k.generator();
        let phi = (&k.one() + &s).scale(&ratio(1, 2));
        // phi^2 = phi + 1
        assert_eq!(&phi * &phi, &phi + &k.one());
        let inv = phi.inv().unwrap();
        assert_eq!(&inv * &phi, k.one());
        assert_eq!(phi.pow(-2).unwrap(), &inv * &inv);
        assert_eq!(s.pow(2).unwrap(), k.from_int(5));
    }

    #[test]
    fn cubic_reduction_table() {
        let k = NumberField::new(qpoly::from_ints(&[-2, 0, 0, 1])).unwrap();
        let t = k.generator();
        assert_eq!(t.pow(3).unwrap(), k.from_int(2));
        assert_eq!(t.pow(4).unwrap(), t.scale(&rat(2)));
        assert_eq!(k.from_poly(&qpoly::from_ints(&[0, 0, 0, 0, 1])), t.scale(&rat(2)));
        let m = t.multiplication_matrix();
        assert_eq!(m[0][2], rat(2));
    }

    #[test]
    fn display() {
        let k = sqrt5();
        assert_eq!(k.to_string(), "Q[x]/(x^2 - 5)");
        assert_eq!((&k.generator() - &k.one()).to_string(), "θ - 1");
    }
}

//! Incrementally grown spans that remember how each reduced row combines the
//! inserted vectors.

use super::matrix::Vector;
use crate::exactfield::{FieldElement, NumberField};

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    reduced: Vector,
    combo: Vector,
}

#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: NumberField,
    dim: usize,
    rows: Vec<Row>,
    originals: Vec<Vector>,
}

impl EchelonBasis {
    pub fn new(field: &NumberField, dim: usize) -> Self {
        EchelonBasis { field: field.clone(), dim, rows: Vec::new(), originals: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.originals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.originals.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// The inserted independent vectors, in insertion order.
    pub fn vectors(&self) -> &[Vector] {
        &self.originals
    }

    /// Reduces `v`, returning the remainder and the combination of inserted
    /// vectors that was subtracted.
    fn reduce(&self, v: &[FieldElement]) -> (Vector, Vector) {
        let mut rem = v.to_vec();
        let mut coeffs = vec![self.field.zero(); self.originals.len()];
        for row in &self.rows {
            let c = rem[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (j, x) in row.reduced.iter().enumerate() {
                if !x.is_zero() {
                    rem[j] = &rem[j] - &(&c * x);
                }
            }
            for (k, x) in row.combo.iter().enumerate() {
                if !x.is_zero() {
                    coeffs[k] = &coeffs[k] + &(&c * x);
                }
            }
        }
        (rem, coeffs)
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero())
    }

    /// Coefficients of `v` in terms of the inserted vectors, if `v` is in the span.
    pub fn express(&self, v: &[FieldElement]) -> Option<Vector> {
        let (rem, coeffs) = self.reduce(v);
        rem.iter().all(|x| x.is_zero()).then_some(coeffs)
    }

    /// Inserts `v` if independent; returns whether it was added.
    pub fn insert(&mut self, v: Vector) -> bool {
        let (rem, coeffs) = self.reduce(&v);
        let Some(pivot) = rem.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = rem[pivot].inv().unwrap();
        let reduced: Vector = rem.iter().map(|x| x * &inv).collect();
        let k = self.originals.len();
        let mut combo: Vector = coeffs.iter().map(|c| -&(c * &inv)).collect();
        combo.push(inv);
        for row in &mut self.rows {
            row.combo.push(self.field.zero());
        }
        debug_assert_eq!(combo.len(), k + 1);
        self.rows.push(Row { pivot, reduced, combo });
        self.originals.push(v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn express_in_inserted_vectors() {
        let k = NumberField::rationals();
        let v = |xs: &[i64]| xs.iter().map(|&x| k.from_int(x)).collect::<Vector>();
        let mut b = EchelonBasis::new(&k, 3);
        assert!(b.insert(v(&[1, 1, 0])));
        assert!(b.insert(v(&[0, 2, 1])));
        assert!(!b.insert(v(&[1, 3, 1])));
        assert_eq!(b.express(&v(&[2, 4, 1])).unwrap(), v(&[2, 1]));
        assert!(b.express(&v(&[0, 0, 1])).is_none());
        assert_eq!(b.len(), 2);
    }
}

//! Dense matrices over a number field.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::factor::restrict_to_q;
use crate::exactfield::{Embedding, FieldElement, NumberField, Polynomial, Rational};

pub type Vector = Vec<FieldElement>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: NumberField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: &NumberField, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &NumberField, n: usize) -> Self {
        Self::scalar(&field.one(), n)
    }

    pub fn scalar(c: &FieldElement, n: usize) -> Self {
        let mut m = Self::zeros(c.field(), n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diagonal(field: &NumberField, diag: &[FieldElement]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Panics on ragged input; an empty list gives a 0×0 matrix.
    pub fn from_rows(field: &NumberField, rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(field: &NumberField, cols: &[Vector], rows: usize) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_ints(field: &NumberField, rows: &[&[i64]]) -> Self {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect())
    }

    pub fn from_rationals(field: &NumberField, rows: &[Vec<Rational>]) -> Self {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|x| field.from_rational(x.clone())).collect()).collect())
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// The scalar `c` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<FieldElement> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(self.field.one());
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if (i == j && *x != c) || (i != j && !x.is_zero()) {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Exactly one nonzero entry in every row and every column.
    pub fn is_monomial(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut col_seen = vec![false; self.cols];
        for i in 0..self.rows {
            let nz: Vec<usize> = (0..self.cols).filter(|&j| !self.get(i, j).is_zero()).collect();
            if nz.len() != 1 || col_seen[nz[0]] {
                return false;
            }
            col_seen[nz[0]] = true;
        }
        true
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// `M v` for a column vector.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// `v M` for a row vector.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        (0..self.cols)
            .map(|j| {
                let mut acc = self.field.zero();
                for (i, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(x * a);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: i64) -> Result<Matrix> {
        self.require_square()?;
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Reduced row echelon form, pivot columns and rank.
    pub fn rref(&self) -> (Matrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let pr = m.get(r, j);
                        if !pr.is_zero() {
                            let x = m.get(i, j) - &(&f * pr);
                            m.set(i, j, x);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        (m, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right kernel `{x : M x = 0}` as column vectors.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots, rank) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate().take(rank) {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<FieldElement> {
        self.require_square()?;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let x = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, x);
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots, _) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(Error::Singular);
        }
        let mut out = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Solves `M x = b`, returning one solution if consistent.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vector> {
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots, _) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            m.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        m
    }

    /// Block matrix from a grid of equally shaped blocks.
    pub fn block(field: &NumberField, blocks: &[Vec<Matrix>]) -> Matrix {
        let rows: usize = blocks.iter().map(|r| r[0].rows).sum();
        let cols: usize = blocks[0].iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let mut r0 = 0;
        for brow in blocks {
            let mut c0 = 0;
            for b in brow {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        m.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += b.cols;
            }
            r0 += brow[0].rows;
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Entrywise image under a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Matrix {
        Matrix {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| emb.apply(x)).collect(),
        }
    }

    /// Restriction of scalars along `K → L` (self over L): each entry becomes its
    /// `[L:K]`-square multiplication matrix over K in the basis 1, θ_L, … .
    pub fn restrict_scalars(&self, emb: &Embedding) -> Matrix {
        let k = emb.source();
        let r = emb.relative_degree();
        let mut m = Matrix::zeros(k, self.rows * r, self.cols * r);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                let block = emb.relative_multiplication(a);
                for (bi, row) in block.iter().enumerate() {
                    for (bj, x) in row.iter().enumerate() {
                        m.set(i * r + bi, j * r + bj, x.clone());
                    }
                }
            }
        }
        m
    }

    /// Restriction of scalars all the way down to Q.
    pub fn to_q(&self) -> Matrix {
        let q = NumberField::rationals();
        Matrix::from_rationals(&q, &restrict_to_q(&self.to_rows()))
    }

    pub fn eval_poly(&self, p: &Polynomial) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Matrix::scalar(c, n));
        }
        acc
    }

    /// Characteristic polynomial `det(xI - A)`, via Hessenberg reduction.
    pub fn charpoly(&self) -> Result<Polynomial> {
        self.require_square()?;
        let n = self.rows;
        let f = &self.field;
        let mut h = self.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&i| !h.get(i, c).is_zero()) else {
                continue;
            };
            if piv != c + 1 {
                h.swap_rows(piv, c + 1);
                for i in 0..n {
                    h.data.swap(i * n + piv, i * n + c + 1);
                }
            }
            let pivot_inv = h.get(c + 1, c).inv().unwrap();
            for j in c + 2..n {
                if h.get(j, c).is_zero() {
                    continue;
                }
                let u = h.get(j, c) * &pivot_inv;
                for k in 0..n {
                    let x = h.get(j, k) - &(&u * h.get(c + 1, k));
                    h.set(j, k, x);
                }
                for i in 0..n {
                    let x = h.get(i, c + 1) + &(&u * h.get(i, j));
                    h.set(i, c + 1, x);
                }
            }
        }
        let mut polys = vec![Polynomial::one(f)];
        for m in 0..n {
            let mut p = polys[m].mul(&Polynomial::linear(h.get(m, m)));
            let mut prod = f.one();
            for i in (0..m).rev() {
                prod = &prod * h.get(i + 1, i);
                if prod.is_zero() {
                    break;
                }
                let coef = h.get(i, m) * &prod;
                p = p.sub(&polys[i].scale(&coef));
            }
            polys.push(p);
        }
        Ok(polys.pop().unwrap())
    }

    /// Minimal polynomial, by the first linear dependency among powers of A.
    pub fn minpoly(&self) -> Result<Polynomial> {
        self.require_square()?;
        let n = self.rows;
        let f = &self.field;
        let mut powers: Vec<Vector> = Vec::new();
        let mut cur = Matrix::identity(f, n);
        loop {
            if !powers.is_empty() {
                let sys = Matrix::from_cols(f, &powers, n * n);
                if let Some(c) = sys.solve(&cur.data) {
                    let mut coeffs: Vec<FieldElement> = c.iter().map(|x| -x).collect();
                    coeffs.push(f.one());
                    return Ok(Polynomial::new(f, coeffs));
                }
            }
            powers.push(cur.data.clone());
            cur = cur.mul(self);
        }
    }

    /// Diagonalizable over the algebraic closure: the minimal polynomial is squarefree.
    pub fn is_diagonalizable(&self) -> Result<bool> {
        Ok(self.minpoly()?.is_squarefree())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", (0..self.cols).map(|j| self.get(i, j).to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

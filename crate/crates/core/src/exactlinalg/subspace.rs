//! Subspaces in canonical reduced echelon form and ordered direct-sum decompositions.

use std::cmp::Ordering;

use super::matrix::{Matrix, Vector};
use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, NumberField};

/// A subspace of column vectors, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &NumberField, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &NumberField, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(field: &NumberField, ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        Self::from_rows(Matrix::from_rows(field, vectors.to_vec()))
    }

    /// Row space of a matrix.
    pub fn from_rows(m: Matrix) -> Self {
        let ambient = m.cols();
        let (r, pivots, rank) = m.rref();
        let rows: Vec<usize> = (0..rank).collect();
        let cols: Vec<usize> = (0..ambient).collect();
        Subspace { ambient, basis: r.submatrix(&rows, &cols), pivots }
    }

    pub fn field(&self) -> &NumberField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Basis vectors as rows in reduced echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recon = self.basis.vec_mul(&c);
        (recon.as_slice() == v).then_some(c)
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> bool {
        self.coordinates(v).is_some()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis_vectors().iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Ok(Subspace::span(self.field(), self.ambient, &vs))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(f, self.ambient));
        }
        // (a, b) with aU = bW; columns of the system are basis vectors of U and W
        let mut cols = self.basis_vectors();
        cols.extend(other.basis_vectors().into_iter().map(|v| v.iter().map(|x| -x).collect()));
        let sys = Matrix::from_cols(f, &cols, self.ambient);
        let k = self.dim();
        let vecs: Vec<Vector> = sys.kernel().iter().map(|c| self.basis.vec_mul(&c[..k])).collect();
        Ok(Subspace::span(f, self.ambient, &vecs))
    }

    /// `A W ⊆ W`.
    pub fn is_invariant(&self, a: &Matrix) -> bool {
        self.basis_vectors().iter().all(|w| self.contains_vector(&a.mul_vec(w)))
    }

    pub fn image(&self, a: &Matrix) -> Subspace {
        let vs: Vec<Vector> = self.basis_vectors().iter().map(|w| a.mul_vec(w)).collect();
        Subspace::span(self.field(), a.rows(), &vs)
    }

    /// Non-pivot coordinate indices, spanning a canonical complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Order by pivot positions, then entries.
    pub fn canonical_cmp(&self, other: &Subspace) -> Ordering {
        self.pivots.cmp(&other.pivots).then_with(|| {
            for (x, y) in self.basis.entries().iter().zip(other.basis.entries()) {
                match x.canonical_cmp(y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Pulls an ambient vector back to coordinates of an ambient subspace
    /// `ambient_basis` (given as a Subspace of a bigger space).
    pub fn in_coordinates_of(&self, outer: &Subspace) -> Option<Subspace> {
        let vs: Option<Vec<Vector>> = self.basis_vectors().iter().map(|v| outer.coordinates(v)).collect();
        Some(Subspace::span(self.field(), outer.dim(), &vs?))
    }

    /// Pushes a subspace of coordinate space of `outer` forward into the ambient space.
    pub fn from_coordinates_of(&self, outer: &Subspace) -> Subspace {
        let vs: Vec<Vector> = self.basis_vectors().iter().map(|c| outer.basis.vec_mul(c)).collect();
        Subspace::span(self.field(), outer.ambient, &vs)
    }

    pub fn embed(&self, emb: &crate::exactfield::Embedding) -> Subspace {
        Subspace::from_rows(self.basis.embed(emb))
    }
}

pub fn subspace_sum(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.sum(w)
}

pub fn subspace_intersect(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.intersect(w)
}

pub fn subspace_contains(u: &Subspace, w: &Subspace) -> Result<bool> {
    u.contains(w)
}

/// Kernel of `A - λI`.
pub fn eigenspace(a: &Matrix, lambda: &FieldElement) -> Result<Subspace> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let shifted = a.sub(&Matrix::scalar(lambda, n));
    Ok(Subspace::span(a.field(), n, &shifted.kernel()))
}

/// The action of `A` on an invariant subspace, in the echelon basis of `W`.
pub fn restrict(a: &Matrix, w: &Subspace) -> Result<Matrix> {
    let f = a.field();
    let mut cols = Vec::with_capacity(w.dim());
    for v in w.basis_vectors() {
        cols.push(w.coordinates(&a.mul_vec(&v)).ok_or(Error::NotInvariant)?);
    }
    Ok(Matrix::from_cols(f, &cols, w.dim()))
}

/// The action of `A` on `V / W` for invariant `W`, in the basis of standard
/// vectors at the non-pivot positions of `W`.
pub fn quotient_action(a: &Matrix, w: &Subspace) -> Result<Matrix> {
    if !w.is_invariant(a) {
        return Err(Error::NotInvariant);
    }
    let f = a.field();
    let comp = w.complement_indices();
    let n = a.rows();
    let mut cols = Vec::with_capacity(comp.len());
    for &k in &comp {
        let mut e = vec![f.zero(); n];
        e[k] = f.one();
        let img = reduce_modulo(&a.mul_vec(&e), w);
        cols.push(comp.iter().map(|&i| img[i].clone()).collect::<Vector>());
    }
    Ok(Matrix::from_cols(f, &cols, comp.len()))
}

/// Representative of `v + W` vanishing at the pivot positions of `W`.
pub fn reduce_modulo(v: &[FieldElement], w: &Subspace) -> Vector {
    let mut out = v.to_vec();
    for (i, &p) in w.pivots().iter().enumerate() {
        let c = out[p].clone();
        if c.is_zero() {
            continue;
        }
        for (j, x) in w.basis().row(i).iter().enumerate() {
            if !x.is_zero() {
                out[j] = &out[j] - &(&c * x);
            }
        }
    }
    out
}

/// An ordered list of subspaces; `partial` when they do not form a direct sum
/// of the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    ambient: usize,
    pieces: Vec<Subspace>,
    partial: bool,
}

impl Decomposition {
    pub fn new(field: &NumberField, ambient: usize, pieces: Vec<Subspace>) -> Self {
        let total: usize = pieces.iter().map(|p| p.dim()).sum();
        let mut vs = Vec::new();
        for p in &pieces {
            vs.extend(p.basis_vectors());
        }
        let span = Subspace::span(field, ambient, &vs);
        let partial = total != ambient || span.dim() != total || pieces.iter().any(|p| p.is_zero());
        Decomposition { ambient, pieces, partial }
    }

    pub fn trivial(field: &NumberField, ambient: usize) -> Self {
        let pieces = if ambient == 0 { Vec::new() } else { vec![Subspace::full(field, ambient)] };
        Decomposition { ambient, pieces, partial: false }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn pieces(&self) -> &[Subspace] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    /// All nonzero intersections of pieces with members of `family`, ordered
    /// by parent piece and then canonically.
    pub fn refine(&self, field: &NumberField, family: &[Subspace]) -> Result<Decomposition> {
        let mut pieces = Vec::new();
        for v in &self.pieces {
            let mut here: Vec<Subspace> = Vec::new();
            for s in family {
                let x = v.intersect(s)?;
                if !x.is_zero() && !here.contains(&x) {
                    here.push(x);
                }
            }
            here.sort_by(|a, b| a.canonical_cmp(b));
            pieces.extend(here);
        }
        Ok(Decomposition::new(field, self.ambient, pieces))
    }

    /// Index of the piece containing `v`, if any.
    pub fn piece_containing(&self, v: &[FieldElement]) -> Option<usize> {
        self.pieces.iter().position(|p| p.contains_vector(v))
    }

    /// Matrix whose columns are the concatenated piece bases.
    pub fn basis_matrix(&self, field: &NumberField) -> Matrix {
        let cols: Vec<Vector> = self.pieces.iter().flat_map(|p| p.basis_vectors()).collect();
        Matrix::from_cols(field, &cols, self.ambient)
    }

    /// Starting offsets of each piece in [`Self::basis_matrix`].
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.pieces.len());
        let mut acc = 0;
        for p in &self.pieces {
            out.push(acc);
            acc += p.dim();
        }
        out
    }
}

/// Refines `d` by the family `s` (see [`Decomposition::refine`]).
pub fn refine_decomposition(d: &Decomposition, s: &[Subspace], field: &NumberField) -> Result<Decomposition> {
    d.refine(field, s)
}

//! Piece permutations with projectively normalized blocks.

use crate::exactlinalg::{Decomposition, Matrix};

/// How a matrix permutes the pieces of a decomposition: `permutation[j]` is the
/// piece receiving piece `j`, and `blocks[j]` is the block `V_j → V_σ(j)` in the
/// canonical piece bases, scaled so its first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialPattern {
    pub permutation: Vec<usize>,
    pub blocks: Vec<Matrix>,
}

/// Raw blocks of `a` with respect to `d`, unnormalized, with the permutation.
pub fn piece_blocks(a: &Matrix, d: &Decomposition) -> Option<(Vec<usize>, Vec<Matrix>)> {
    let pieces = d.pieces();
    let mut perm = Vec::with_capacity(pieces.len());
    let mut blocks = Vec::with_capacity(pieces.len());
    let mut used = vec![false; pieces.len()];
    for v in pieces {
        let images: Vec<_> = v.basis_vectors().iter().map(|w| a.mul_vec(w)).collect();
        let target = d.piece_containing(&images[0])?;
        let t = &pieces[target];
        if used[target] || t.dim() != v.dim() {
            return None;
        }
        used[target] = true;
        let cols: Option<Vec<_>> = images.iter().map(|x| t.coordinates(x)).collect();
        blocks.push(Matrix::from_cols(a.field(), &cols?, t.dim()));
        perm.push(target);
    }
    Some((perm, blocks))
}

pub fn normalize_block(b: &Matrix) -> Matrix {
    match b.entries().iter().find(|x| !x.is_zero()) {
        Some(x) if !x.is_one() => b.scale(&x.inv().unwrap()),
        _ => b.clone(),
    }
}

/// The pattern of `a`, or `None` if `a` does not map pieces onto pieces.
pub fn monomial_pattern(a: &Matrix, d: &Decomposition) -> Option<MonomialPattern> {
    let (permutation, blocks) = piece_blocks(a, d)?;
    Some(MonomialPattern { permutation, blocks: blocks.iter().map(normalize_block).collect() })
}

/// Whether `a` acts as a scalar on every piece.
pub fn acts_diagonally(a: &Matrix, d: &Decomposition) -> bool {
    match piece_blocks(a, d) {
        Some((perm, blocks)) => perm.iter().enumerate().all(|(i, &p)| i == p) && blocks.iter().all(|b| b.as_scalar().is_some()),
        None => false,
    }
}

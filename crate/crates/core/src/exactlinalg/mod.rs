//! Exact dense linear algebra over number fields.

pub mod echelon;
pub mod matrix;
pub mod subspace;

pub use echelon::EchelonBasis;
pub use matrix::{Matrix, Vector};
pub use subspace::{
    eigenspace, quotient_action, reduce_modulo, refine_decomposition, restrict, subspace_contains, subspace_intersect,
    subspace_sum, Decomposition, Subspace,
};

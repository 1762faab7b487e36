//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is reducible over Q")]
    ReduciblePolynomial,
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinimalPolynomial(String),
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not invariant under the matrix")]
    NotInvariant,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not steady")]
    NotSteady,
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("representation is not invertible")]
    NotInvertible,
    #[error("representation is not minimal")]
    NotMinimal,
    #[error("transition matrix for letter {0:?} is not monomial")]
    NotMonomial(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("module is absolutely irreducible")]
    Irreducible,
    #[error("target unreachable: {0}")]
    TargetUnreachable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

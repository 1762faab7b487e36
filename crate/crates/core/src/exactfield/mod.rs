//! Exact arithmetic over Q and absolute number fields.

pub mod extension;
pub mod factor;
pub mod field;
pub mod poly;
pub mod qmat;
pub mod qpoly;
pub mod rational;
pub mod roots;
mod zfactor;

pub use extension::{adjoin_root, power_in_subfield, splitting_field, Embedding, SplittingField};
pub use factor::{factor_over_k, factor_over_q, is_irreducible};
pub use field::{FieldElement, NumberField};
pub use poly::Polynomial;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use roots::{cyclotomic, euler_phi, is_root_of_unity, min_poly_over_q};

/// Creates a number field from a monic irreducible polynomial over Q.
pub fn nf_create(min_poly: &Polynomial) -> crate::error::Result<NumberField> {
    let q = min_poly
        .to_rational()
        .ok_or_else(|| crate::error::Error::InvalidMinimalPolynomial("coefficients must be rational".into()))?;
    NumberField::new(q)
}

//! Field embeddings and splitting fields.

use num_traits::Zero;

use super::factor::{factor_over_k, norm, shift_sequence};
use super::field::{FieldElement, NumberField};
use super::poly::Polynomial;
use super::qmat::{self, QMat};
use super::qpoly;
use super::rational::Rational;
use super::roots::conjugate_ratio_exponent;
use crate::error::{Error, Result};

/// A field embedding K → L, stored as the Q-linear map on power-basis
/// coordinates (column k holds the image of the k-th power of K's generator).
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    source: NumberField,
    target: NumberField,
    matrix: QMat,
}

impl Embedding {
    pub fn identity(k: &NumberField) -> Self {
        Embedding { source: k.clone(), target: k.clone(), matrix: qmat::identity(k.degree()) }
    }

    /// The embedding sending the generator of `source` to `image`.
    pub fn from_generator_image(source: &NumberField, image: &FieldElement) -> Self {
        let target = image.field().clone();
        let n = source.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = target.one();
        for k in 0..n {
            if k > 0 {
                cur = &cur * image;
            }
            cols.push(cur.coords().to_vec());
        }
        let rows = target.degree();
        let matrix = (0..rows).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
        Embedding { source: source.clone(), target, matrix }
    }

    pub fn source(&self) -> &NumberField {
        &self.source
    }

    pub fn target(&self) -> &NumberField {
        &self.target
    }

    pub fn matrix(&self) -> &QMat {
        &self.matrix
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field().same(&self.source), "element is not in the embedding source");
        self.target.element(qmat::mat_vec(&self.matrix, x.coords())).unwrap()
    }

    pub fn apply_poly(&self, p: &Polynomial) -> Polynomial {
        p.map(&self.target, |c| self.apply(c))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Embedding {
        assert!(self.target.same(&other.source), "embeddings do not compose");
        Embedding { source: self.source.clone(), target: other.target.clone(), matrix: qmat::mul(&other.matrix, &self.matrix) }
    }

    /// Relative degree [L : K].
    pub fn relative_degree(&self) -> usize {
        self.target.degree() / self.source.degree()
    }

    /// Q-basis of L given by products (image of K-power-basis) × (powers of L's generator),
    /// ordered with L-powers outermost. Columns of the returned matrix.
    fn tower_basis(&self) -> QMat {
        let r = self.relative_degree();
        let nk = self.source.degree();
        let nl = self.target.degree();
        let g = self.target.generator();
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(nl);
        let mut lp = self.target.one();
        for j in 0..r {
            if j > 0 {
                lp = &lp * &g;
            }
            for i in 0..nk {
                let mut e = vec![Rational::zero(); nk];
                e[i] = Rational::from_integer(1.into());
                let img = self.target.element(qmat::mat_vec(&self.matrix, &e)).unwrap();
                cols.push((&img * &lp).into_coords());
            }
        }
        (0..nl).map(|row| cols.iter().map(|c| c[row].clone()).collect()).collect()
    }

    /// Coordinates of `x ∈ L` over K in the basis 1, θ_L, …, θ_L^{r-1}.
    pub fn to_relative(&self, x: &FieldElement) -> Vec<FieldElement> {
        let r = self.relative_degree();
        let nk = self.source.degree();
        let b = self.tower_basis();
        let cols: Vec<Vec<Rational>> = (0..b.len()).map(|j| b.iter().map(|row| row[j].clone()).collect()).collect();
        let c = qmat::solve_in_span(&cols, x.coords()).expect("tower basis spans L");
        (0..r).map(|j| self.source.element(c[j * nk..(j + 1) * nk].to_vec()).unwrap()).collect()
    }

    /// The K-element mapping to `x`, if `x` lies in the image.
    pub fn preimage(&self, x: &FieldElement) -> Option<FieldElement> {
        let nk = self.source.degree();
        let cols: Vec<Vec<Rational>> = (0..nk).map(|j| self.matrix.iter().map(|row| row[j].clone()).collect()).collect();
        qmat::solve_in_span(&cols, x.coords()).map(|c| self.source.element(c).unwrap())
    }

    /// Matrix over K of multiplication by `x ∈ L` on the relative basis.
    pub fn relative_multiplication(&self, x: &FieldElement) -> Vec<Vec<FieldElement>> {
        let r = self.relative_degree();
        let g = self.target.generator();
        let mut cols = Vec::with_capacity(r);
        let mut cur = x.clone();
        for j in 0..r {
            if j > 0 {
                cur = &cur * &g;
            }
            cols.push(self.to_relative(&cur));
        }
        (0..r).map(|i| (0..r).map(|j| cols[j][i].clone()).collect()).collect()
    }
}

/// Adjoins a root of `p`, irreducible of degree at least two over its field K.
/// Returns the absolute field L with its embedding K → L, plus a root of p in L.
pub fn adjoin_root(p: &Polynomial) -> (NumberField, Embedding, FieldElement) {
    let k = p.field().clone();
    let p = p.monic();
    if k.is_rational() {
        let l = NumberField::from_irreducible(p.to_rational().unwrap());
        let emb = Embedding::from_generator_image(&k, &l.one());
        let root = l.generator();
        return (l, emb, root);
    }
    let alpha = k.generator();
    for s in shift_sequence() {
        let sq = Rational::from_integer(s.into());
        let gs = p.shift(&-&alpha.scale(&sq));
        let n = norm(&gs);
        if qpoly::degree(&qpoly::gcd(&n, &qpoly::derivative(&n))) != Some(0) {
            continue;
        }
        let l = NumberField::from_irreducible(qpoly::monic(&n));
        let z = l.generator();
        // gs(z) = 0 with K's generator replaced by t, as a polynomial in t over L
        let nk = k.degree();
        let mut tcoeffs = vec![l.zero(); nk];
        let mut zp = l.one();
        for c in gs.coeffs() {
            for (i, q) in c.coords().iter().enumerate() {
                if !q.is_zero() {
                    tcoeffs[i] = &tcoeffs[i] + &zp.scale(q);
                }
            }
            zp = &zp * &z;
        }
        let g_t = Polynomial::new(&l, tcoeffs);
        let m_t = Polynomial::from_rationals(&l, k.min_poly());
        let lin = g_t.gcd(&m_t);
        assert_eq!(lin.degree(), Some(1), "squarefree norm forces a linear gcd");
        let alpha_l = -&lin.coeff(0);
        let emb = Embedding::from_generator_image(&k, &alpha_l);
        let root = &z - &alpha_l.scale(&sq);
        debug_assert!(emb.apply_poly(&p).eval(&root).is_zero());
        return (l, emb, root);
    }
    unreachable!()
}

#[derive(Clone, Debug)]
pub struct SplittingField {
    pub field: NumberField,
    pub embedding: Embedding,
    /// Distinct roots with multiplicities, in canonical order.
    pub roots: Vec<(FieldElement, usize)>,
}

/// Splitting field of a nonzero polynomial over its coefficient field.
pub fn splitting_field(p: &Polynomial) -> SplittingField {
    assert!(!p.is_zero(), "splitting field of the zero polynomial");
    let mut emb = Embedding::identity(p.field());
    loop {
        let pl = emb.apply_poly(p);
        let factors = factor_over_k(&pl);
        match factors.iter().find(|(f, _)| f.degree().unwrap_or(0) > 1) {
            Some((f, _)) => {
                let (_, e, _) = adjoin_root(f);
                emb = emb.then(&e);
            }
            None => {
                let mut roots: Vec<(FieldElement, usize)> =
                    factors.into_iter().map(|(f, m)| (-&f.coeff(0), m)).collect();
                roots.sort_by(|a, b| a.0.canonical_cmp(&b.0));
                return SplittingField { field: emb.target().clone(), embedding: emb, roots };
            }
        }
    }
}

/// Least `m ≥ 1` with `x^m` in the image of K, together with the K-element.
pub fn power_in_subfield(x: &FieldElement, emb: &Embedding) -> Result<Option<(u64, FieldElement)>> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mult = emb.relative_multiplication(x);
    let Some(m) = conjugate_ratio_exponent(&mult)? else {
        return Ok(None);
    };
    let xm = x.pow(m as i64)?;
    let beta = emb.preimage(&xm).expect("conjugate ratios trivial forces a K-rational power");
    Ok(Some((m, beta)))
}

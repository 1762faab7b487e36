//! Invariant subspaces of matrix algebras and the finitely generated spectrum
//! decision built on them.

mod spectrum;

pub use spectrum::{
    block_monomial_lift, decide_fg_spectrum, fg_spectrum_blocks_over_extension, verify_spectrum_certificate,
    verify_spectrum_refutation, BlockMonomialLift, KFlag, SpectrumCertificate, SpectrumDecision, SpectrumRefutation,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::exactfield::{adjoin_root, factor_over_k, Embedding, NumberField};
use crate::exactlinalg::{quotient_action, restrict, EchelonBasis, Matrix, Subspace, Vector};

/// A basis of the unital algebra generated by a set of matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpan {
    pub basis: Vec<Matrix>,
    pub dim: usize,
}

fn flatten(m: &Matrix) -> Vector {
    m.entries().to_vec()
}

pub fn algebra_span(field: &NumberField, dim: usize, gens: &[Matrix]) -> AlgebraSpan {
    let mut span = EchelonBasis::new(field, dim * dim);
    let mut basis = Vec::new();
    let id = Matrix::identity(field, dim);
    if span.insert(flatten(&id)) {
        basis.push(id);
    }
    let mut next = 0;
    while next < basis.len() {
        let b = basis[next].clone();
        next += 1;
        for g in gens {
            let p = g.mul(&b);
            if span.insert(flatten(&p)) {
                basis.push(p);
            }
        }
    }
    let dim = basis.len();
    AlgebraSpan { basis, dim }
}

pub fn is_absolutely_irreducible(field: &NumberField, dim: usize, gens: &[Matrix]) -> bool {
    algebra_span(field, dim, gens).dim == dim * dim
}

/// Matrices commuting with every generator.
pub fn centralizer(field: &NumberField, dim: usize, gens: &[Matrix]) -> Vec<Matrix> {
    let n = dim * dim;
    let mut rows: Vec<Vector> = Vec::new();
    for g in gens {
        for i in 0..dim {
            for j in 0..dim {
                // (gX − Xg)_{ij}
                let mut r = vec![field.zero(); n];
                for k in 0..dim {
                    let a = g.get(i, k);
                    if !a.is_zero() {
                        r[k * dim + j] = &r[k * dim + j] + a;
                    }
                    let b = g.get(k, j);
                    if !b.is_zero() {
                        r[i * dim + k] = &r[i * dim + k] - b;
                    }
                }
                rows.push(r);
            }
        }
    }
    if rows.is_empty() {
        return (0..n)
            .map(|t| {
                let mut m = Matrix::zeros(field, dim, dim);
                m.set(t / dim, t % dim, field.one());
                m
            })
            .collect();
    }
    Matrix::from_rows(field, rows)
        .kernel()
        .into_iter()
        .map(|v| Matrix::from_rows(field, v.chunks(dim).map(|c| c.to_vec()).collect()))
        .collect()
}

/// The smallest subspace containing `u` and invariant under `gens`.
pub fn spin(u: &[crate::exactfield::FieldElement], gens: &[Matrix]) -> Subspace {
    let field = u[0].field().clone();
    let n = u.len();
    let mut span = EchelonBasis::new(&field, n);
    span.insert(u.to_vec());
    let mut next = 0;
    while next < span.len() {
        let v = span.vectors()[next].clone();
        next += 1;
        for g in gens {
            span.insert(g.mul_vec(&v));
        }
    }
    Subspace::span(&field, n, span.vectors())
}

/// A proper nonzero invariant subspace, over the base field when possible.
#[derive(Clone, Debug, PartialEq)]
pub enum InvariantSubspace {
    Rational(Subspace),
    Extension { field: NumberField, embedding: Embedding, subspace: Subspace },
}

fn annihilator(u: &Subspace) -> Subspace {
    let f = u.field();
    let n = u.ambient_dim();
    if u.is_zero() {
        return Subspace::full(f, n);
    }
    Subspace::span(f, n, &u.basis().kernel())
}

fn smallest(cands: Vec<Subspace>) -> Option<Subspace> {
    cands.into_iter().min_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.canonical_cmp(b)))
}

fn proper(s: &Subspace) -> bool {
    !s.is_zero() && !s.is_full()
}

enum SpinOutcome {
    Found(Subspace),
    Irreducible,
    Exhausted,
}

/// Seed-and-spin with a Norton-style dual check.
fn seed_and_spin(field: &NumberField, dim: usize, gens: &[Matrix], algebra: &AlgebraSpan, cfg: &SearchConfig) -> Result<SpinOutcome> {
    let transposed: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let total = gens.len() + cfg.seed_budget;
    for step in 0..total {
        let a = if step < gens.len() {
            gens[step].clone()
        } else {
            let mut a = Matrix::zeros(field, dim, dim);
            for b in &algebra.basis {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    a = a.add(&b.scale(&field.from_int(c)));
                }
            }
            a
        };
        let cp = a.charpoly()?;
        let mut cands = Vec::new();
        let mut certified = false;
        for (p, _) in factor_over_k(&cp) {
            let pa = a.eval_poly(&p);
            let ker = pa.kernel();
            let w = spin(&ker[0], gens);
            if proper(&w) {
                cands.push(w.clone());
            }
            let kt = pa.transpose().kernel();
            let wt = spin(&kt[0], &transposed);
            if proper(&wt) {
                cands.push(annihilator(&wt));
            }
            if ker.len() == p.degree().unwrap_or(0) && w.is_full() && wt.is_full() {
                certified = true;
            }
        }
        if let Some(w) = smallest(cands) {
            return Ok(SpinOutcome::Found(w));
        }
        if certified {
            return Ok(SpinOutcome::Irreducible);
        }
    }
    Ok(SpinOutcome::Exhausted)
}

/// Finds a proper nonzero invariant subspace of a representation that is not
/// absolutely irreducible.
pub fn invariant_subspace(field: &NumberField, dim: usize, gens: &[Matrix], cfg: &SearchConfig) -> Result<InvariantSubspace> {
    let algebra = algebra_span(field, dim, gens);
    if algebra.dim == dim * dim {
        return Err(Error::Irreducible);
    }
    let cent: Vec<Matrix> = centralizer(field, dim, gens).into_iter().filter(|c| c.as_scalar().is_none()).collect();
    for c in &cent {
        let factors = factor_over_k(&c.minpoly()?);
        if factors.len() > 1 || factors[0].1 > 1 {
            let cands = factors.iter().map(|(p, _)| Subspace::span(field, dim, &c.eval_poly(p).kernel())).collect();
            return Ok(InvariantSubspace::Rational(smallest(cands).expect("nonempty factor list")));
        }
    }
    match seed_and_spin(field, dim, gens, &algebra, cfg)? {
        SpinOutcome::Found(w) => Ok(InvariantSubspace::Rational(w)),
        SpinOutcome::Exhausted => Err(Error::SearchBudgetExceeded("seed-and-spin found neither a subspace nor an irreducibility proof".into())),
        SpinOutcome::Irreducible => {
            let c = cent.first().ok_or(Error::Irreducible)?;
            let mp = c.minpoly()?;
            let (l, emb, root) = adjoin_root(&mp);
            let cl = c.embed(&emb);
            let shifted = cl.sub(&Matrix::scalar(&root, dim));
            let w = Subspace::span(&l, dim, &shifted.kernel());
            Ok(InvariantSubspace::Extension { field: l, embedding: emb, subspace: w })
        }
    }
}

/// Invariant flag `0 = W₀ ⊂ … ⊂ W_k = V` with quotient actions.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionChain {
    pub extension: NumberField,
    pub embedding: Embedding,
    /// Includes the zero subspace and the full space.
    pub flag: Vec<Subspace>,
    /// `block_images[g][i]` is the action of generator `g` on `W_{i+1}/W_i`.
    pub block_images: Vec<Vec<Matrix>>,
}

impl CompositionChain {
    pub fn block_dims(&self) -> Vec<usize> {
        self.flag.windows(2).map(|w| w[1].dim() - w[0].dim()).collect()
    }
}

/// Quotient actions of `gens` on `upper / lower`.
pub(crate) fn level_action(gens: &[Matrix], lower: &Subspace, upper: &Subspace) -> Result<(Subspace, Vec<Matrix>)> {
    let s = lower.in_coordinates_of(upper).ok_or(Error::NotInvariant)?;
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        out.push(quotient_action(&restrict(g, upper)?, &s)?);
    }
    Ok((s, out))
}

/// Lifts a vector in quotient coordinates of `upper / lower` to the ambient space.
pub(crate) fn lift_quotient_vector(x: &[crate::exactfield::FieldElement], lower_coords: &Subspace, upper: &Subspace) -> Vector {
    let f = upper.field();
    let mut y = vec![f.zero(); upper.dim()];
    for (t, &k) in lower_coords.complement_indices().iter().enumerate() {
        y[k] = x[t].clone();
    }
    upper.basis().vec_mul(&y)
}

/// Refines an invariant flag until every quotient is irreducible, over the base
/// field only, or absolutely after adjoining roots when `extend` is set.
pub(crate) fn refine_flag(
    field: &NumberField,
    dim: usize,
    gens: &[Matrix],
    cfg: &SearchConfig,
    extend: bool,
) -> Result<(Embedding, Vec<Matrix>, Vec<Subspace>)> {
    let mut emb = Embedding::identity(field);
    let mut gens: Vec<Matrix> = gens.to_vec();
    let mut flag = vec![Subspace::zero(field, dim), Subspace::full(field, dim)];
    if dim == 0 {
        flag.truncate(1);
        return Ok((emb, gens, flag));
    }
    let mut level = 1;
    while level < flag.len() {
        let cur = emb.target().clone();
        let (s, acts) = level_action(&gens, &flag[level - 1], &flag[level])?;
        let q = acts.first().map_or(flag[level].dim() - flag[level - 1].dim(), |m| m.rows());
        let found = match invariant_subspace(&cur, q, &acts, cfg) {
            Err(Error::Irreducible) => None,
            Err(e) => return Err(e),
            Ok(InvariantSubspace::Rational(u)) => Some(u),
            Ok(InvariantSubspace::Extension { embedding, subspace, .. }) => {
                if !extend {
                    None
                } else {
                    gens = gens.iter().map(|g| g.embed(&embedding)).collect();
                    flag = flag.iter().map(|w| w.embed(&embedding)).collect();
                    emb = emb.then(&embedding);
                    let w = lift_into(&subspace, &s.embed(&embedding), &flag[level - 1], &flag[level]);
                    flag.insert(level, w);
                    continue;
                }
            }
        };
        match found {
            None => level += 1,
            Some(u) => {
                let w = lift_into(&u, &s, &flag[level - 1], &flag[level]);
                flag.insert(level, w);
            }
        }
    }
    Ok((emb, gens, flag))
}

fn lift_into(u: &Subspace, s: &Subspace, lower: &Subspace, upper: &Subspace) -> Subspace {
    let f = upper.field();
    let mut vs = lower.basis_vectors();
    for x in u.basis_vectors() {
        vs.push(lift_quotient_vector(&x, s, upper));
    }
    Subspace::span(f, upper.ambient_dim(), &vs)
}

pub fn composition_chain(field: &NumberField, dim: usize, gens: &[Matrix], cfg: &SearchConfig) -> Result<CompositionChain> {
    let (embedding, lgens, flag) = refine_flag(field, dim, gens, cfg, true)?;
    let mut block_images = vec![Vec::new(); lgens.len()];
    for w in flag.windows(2) {
        let (_, acts) = level_action(&lgens, &w[0], &w[1])?;
        for (g, a) in acts.into_iter().enumerate() {
            block_images[g].push(a);
        }
    }
    Ok(CompositionChain { extension: embedding.target().clone(), embedding, flag, block_images })
}

/// An L-matrix viewed over K through the regular representation of L.
pub fn restrict_scalars(m: &Matrix, emb: &Embedding) -> Matrix {
    m.restrict_scalars(emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Polynomial, Rational};

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn swap() -> Matrix {
        Matrix::from_ints(&q(), &[&[0, 1], &[1, 0]])
    }

    fn rot() -> Matrix {
        Matrix::from_ints(&q(), &[&[0, -1], &[1, 0]])
    }

    fn diag23() -> Matrix {
        Matrix::from_ints(&q(), &[&[2, 0], &[0, 3]])
    }

    #[test]
    fn algebra_dimensions() {
        let k = q();
        assert_eq!(algebra_span(&k, 2, &[diag23()]).dim, 2);
        assert_eq!(algebra_span(&k, 2, &[swap(), diag23()]).dim, 4);
        assert_eq!(algebra_span(&k, 2, &[]).dim, 1);
        assert!(is_absolutely_irreducible(&k, 2, &[swap(), diag23()]));
        assert!(!is_absolutely_irreducible(&k, 2, &[diag23()]));
        assert!(!is_absolutely_irreducible(&k, 2, &[rot()]));
    }

    #[test]
    fn algebra_span_is_closed() {
        let k = q();
        let a = algebra_span(&k, 3, &[Matrix::from_ints(&k, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]])]);
        let again = algebra_span(&k, 3, &a.basis);
        assert_eq!(a.dim, again.dim);
    }

    #[test]
    fn invariant_subspace_examples() {
        let k = q();
        let cfg = SearchConfig::default();
        let e1 = Subspace::span(&k, 2, &[vec![k.one(), k.zero()]]);
        assert_eq!(invariant_subspace(&k, 2, &[diag23()], &cfg).unwrap(), InvariantSubspace::Rational(e1.clone()));
        let j = Matrix::from_ints(&k, &[&[1, 1], &[0, 1]]);
        assert_eq!(invariant_subspace(&k, 2, &[j], &cfg).unwrap(), InvariantSubspace::Rational(e1));
        match invariant_subspace(&k, 2, &[rot()], &cfg).unwrap() {
            InvariantSubspace::Extension { field, embedding, subspace } => {
                assert_eq!(field.degree(), 2);
                assert_eq!(subspace.dim(), 1);
                assert!(subspace.is_invariant(&rot().embed(&embedding)));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(invariant_subspace(&k, 2, &[swap(), diag23()], &cfg), Err(Error::Irreducible)));
    }

    #[test]
    fn spin_finds_subspace_when_centralizer_is_scalar() {
        let k = q();
        let a = Matrix::from_ints(&k, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let b = Matrix::from_ints(&k, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        let gens = [a.clone(), b.clone()];
        match invariant_subspace(&k, 3, &gens, &SearchConfig::default()).unwrap() {
            InvariantSubspace::Rational(w) => {
                assert!(proper(&w));
                assert!(w.is_invariant(&a) && w.is_invariant(&b));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn isotypic_rotation_pair_splits_over_base_field() {
        let k = q();
        let r = rot();
        let rr = Matrix::block(&k, &[vec![r.clone(), Matrix::zeros(&k, 2, 2)], vec![Matrix::zeros(&k, 2, 2), r.clone()]]);
        match invariant_subspace(&k, 4, std::slice::from_ref(&rr), &SearchConfig::default()).unwrap() {
            InvariantSubspace::Rational(w) => {
                assert_eq!(w.dim(), 2);
                assert!(w.is_invariant(&rr));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chains() {
        let k = q();
        let cfg = SearchConfig::default();
        let c = composition_chain(&k, 2, &[diag23()], &cfg).unwrap();
        assert!(c.extension.is_rational());
        assert_eq!(c.block_dims(), vec![1, 1]);
        assert_eq!(c.block_images[0][0], Matrix::from_ints(&k, &[&[2]]));
        assert_eq!(c.block_images[0][1], Matrix::from_ints(&k, &[&[3]]));
        let c = composition_chain(&k, 2, &[Matrix::from_ints(&k, &[&[2, 1], &[0, 3]])], &cfg).unwrap();
        assert_eq!(c.block_images[0][0], Matrix::from_ints(&k, &[&[2]]));
        assert_eq!(c.block_images[0][1], Matrix::from_ints(&k, &[&[3]]));
        let c = composition_chain(&k, 2, &[rot()], &cfg).unwrap();
        assert_eq!(c.extension.degree(), 2);
        assert_eq!(c.block_dims(), vec![1, 1]);
        let a = c.block_images[0][0].get(0, 0).clone();
        let b = c.block_images[0][1].get(0, 0).clone();
        assert!((&a + &b).is_zero());
        assert!((&a * &a + c.extension.one()).is_zero());
    }

    #[test]
    fn restriction_of_scalars() {
        let k = q();
        let p = Polynomial::from_rationals(&k, &[Rational::from_integer((-5).into()), Rational::from_integer(0.into()), Rational::from_integer(1.into())]);
        let l = crate::exactfield::nf_create(&p).unwrap();
        let emb = Embedding::from_generator_image(&k, &l.one());
        let s = Matrix::from_rows(&l, vec![vec![l.generator()]]);
        assert_eq!(restrict_scalars(&s, &emb), Matrix::from_ints(&k, &[&[0, 5], &[1, 0]]));
        assert_eq!(restrict_scalars(&Matrix::identity(&l, 1), &emb), Matrix::identity(&k, 2));
    }
}

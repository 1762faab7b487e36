//! Equivalent automata of the lowest reachable ambiguity class for invertible
//! weighted automata, with exact ambiguity degrees.

use std::collections::{HashMap, VecDeque};

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::exactfield::{splitting_field, Embedding, FieldElement, NumberField};
use crate::exactlinalg::{EchelonBasis, Matrix, Vector};
use crate::groupdec::{
    decide_virtually_diagonalizable, lift_with_bases, verify_certificate, verify_refutation, EpimonomialCertificate,
    GroupDecision, GroupInput, RefutationWitness,
};
use crate::repsplit::{
    block_monomial_lift, decide_fg_spectrum, verify_spectrum_certificate, verify_spectrum_refutation, SpectrumCertificate,
    SpectrumDecision, SpectrumRefutation,
};
use crate::wfa::{equivalent, is_invertible, minimize, structural_ambiguity, AmbiguityClass, LinRep};

#[derive(Clone, Debug, PartialEq)]
pub struct AmbiguityCertificate {
    pub minimal_m: usize,
    /// Nonzero weights of the synthesized automaton; they generate a group containing
    /// every run weight.
    pub gamma_generators: Vec<FieldElement>,
    /// Monomial transitions.
    pub synthesized: LinRep,
    pub group_certificate: EpimonomialCertificate,
    /// A word on which `minimal_m` runs succeed.
    pub witness_word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesClassification {
    FinitelyAmbiguousEquivalent {
        minimal: LinRep,
        certificate: AmbiguityCertificate,
    },
    PolynomiallyAmbiguousEquivalent {
        minimal: LinRep,
        group_refutation: RefutationWitness,
        spectrum: SpectrumCertificate,
        /// Block upper-triangular with monomial diagonal blocks.
        synthesized: LinRep,
        level_dims: Vec<usize>,
    },
    ExponentialOnly {
        minimal: LinRep,
        group_refutation: RefutationWitness,
        spectrum_refutation: SpectrumRefutation,
    },
}

impl SeriesClassification {
    pub fn class_name(&self) -> &'static str {
        match self {
            SeriesClassification::FinitelyAmbiguousEquivalent { .. } => "FinitelyAmbiguousEquivalent",
            SeriesClassification::PolynomiallyAmbiguousEquivalent { .. } => "PolynomiallyAmbiguousEquivalent",
            SeriesClassification::ExponentialOnly { .. } => "ExponentialOnly",
        }
    }

    /// Lower is better.
    pub fn rank(&self) -> u8 {
        match self {
            SeriesClassification::FinitelyAmbiguousEquivalent { .. } => 0,
            SeriesClassification::PolynomiallyAmbiguousEquivalent { .. } => 1,
            SeriesClassification::ExponentialOnly { .. } => 2,
        }
    }

    pub fn minimal_m(&self) -> Option<usize> {
        match self {
            SeriesClassification::FinitelyAmbiguousEquivalent { certificate, .. } => Some(certificate.minimal_m),
            _ => None,
        }
    }

    pub fn minimal(&self) -> &LinRep {
        match self {
            SeriesClassification::FinitelyAmbiguousEquivalent { minimal, .. }
            | SeriesClassification::PolynomiallyAmbiguousEquivalent { minimal, .. }
            | SeriesClassification::ExponentialOnly { minimal, .. } => minimal,
        }
    }

    pub fn synthesized(&self) -> Option<&LinRep> {
        match self {
            SeriesClassification::FinitelyAmbiguousEquivalent { certificate, .. } => Some(&certificate.synthesized),
            SeriesClassification::PolynomiallyAmbiguousEquivalent { synthesized, .. } => Some(synthesized),
            SeriesClassification::ExponentialOnly { .. } => None,
        }
    }
}

/// The group generated by the transition matrices.
pub fn transition_group(rep: &LinRep) -> Result<GroupInput> {
    GroupInput::new(rep.field(), rep.dim(), rep.transitions().to_vec())
}

fn check_minimal_invertible(rep: &LinRep) -> Result<()> {
    if !is_invertible(rep) {
        return Err(Error::NotInvertible);
    }
    if minimize(rep).dim() != rep.dim() {
        return Err(Error::NotMinimal);
    }
    Ok(())
}

/// Per-piece bases whose first vector is the component of `v` in that piece
/// whenever that component is nonzero.
fn aligned_piece_bases(v: &[FieldElement], cert: &EpimonomialCertificate) -> Result<Vec<Vec<Vector>>> {
    let d = &cert.decomposition;
    let f = v.first().map(|x| x.field().clone()).unwrap_or_else(NumberField::rationals);
    let b = d.basis_matrix(&f);
    let coords = b.solve(v).ok_or_else(|| Error::InvalidCertificate("decomposition does not span".into()))?;
    let mut out = Vec::with_capacity(d.len());
    let mut off = 0;
    for piece in d.pieces() {
        let pb = piece.basis_vectors();
        let k = pb.len();
        let mut comp = vec![f.zero(); v.len()];
        for (t, e) in pb.iter().enumerate() {
            let c = &coords[off + t];
            if !c.is_zero() {
                for (x, y) in comp.iter_mut().zip(e) {
                    *x = &*x + &(c * y);
                }
            }
        }
        off += k;
        let mut span = EchelonBasis::new(&f, v.len());
        if comp.iter().any(|x| !x.is_zero()) {
            span.insert(comp);
        }
        for e in pb {
            span.insert(e);
        }
        out.push(span.vectors().to_vec());
    }
    Ok(out)
}

/// An equivalent automaton with monomial transitions, induced from the diagonal
/// subgroup of the certificate.
pub fn monomialize(rep: &LinRep, cert: &EpimonomialCertificate) -> Result<LinRep> {
    check_minimal_invertible(rep)?;
    let g = transition_group(rep)?;
    verify_certificate(&g, cert)?;
    let d = rep.dim();
    let f = rep.field();
    let bases = aligned_piece_bases(rep.final_vector(), cert)?;
    let lift = lift_with_bases(&g, cert, &bases)?;
    let n = cert.coset_reps.len();
    let basis: Vec<Vector> = bases.iter().flatten().cloned().collect();
    let b = Matrix::from_cols(f, &basis, d);
    let iota = b.solve(rep.final_vector()).ok_or(Error::Singular)?;
    let mut v_hat = vec![f.zero(); d * n];
    v_hat[..d].clone_from_slice(&iota);
    let u_hat = lift.epimorphism.vec_mul(rep.initial());
    LinRep::new(f, rep.alphabet().to_vec(), u_hat, v_hat, lift.generators)
}

/// An equivalent automaton whose transitions are block upper-triangular with
/// monomial diagonal blocks; also returns the block sizes.
pub fn block_monomialize(rep: &LinRep, cert: &SpectrumCertificate) -> Result<(LinRep, Vec<usize>)> {
    check_minimal_invertible(rep)?;
    let g = transition_group(rep)?;
    verify_spectrum_certificate(&g, cert)?;
    let f = rep.field();
    let lift = block_monomial_lift(&g, cert)?;
    let iota = lift.adapted_basis.solve(rep.final_vector()).ok_or(Error::Singular)?;
    let big = lift.epimorphism.cols();
    let mut v_hat = vec![f.zero(); big];
    for (x, &pos) in lift.base_positions.iter().enumerate() {
        v_hat[pos] = iota[x].clone();
    }
    let u_hat = lift.epimorphism.vec_mul(rep.initial());
    Ok((LinRep::new(f, rep.alphabet().to_vec(), u_hat, v_hat, lift.generators)?, lift.level_dims))
}

fn permutation_of(m: &Matrix) -> Option<Vec<usize>> {
    if !m.is_monomial() {
        return None;
    }
    (0..m.rows()).map(|i| (0..m.cols()).find(|&j| !m.get(i, j).is_zero())).collect()
}

/// Exact ambiguity degree of an automaton with monomial transitions, with a word
/// attaining it.
pub fn ambiguity_degree_with_witness(rep: &LinRep) -> Result<(usize, Vec<usize>)> {
    let perms: Vec<Vec<usize>> = rep
        .transitions()
        .iter()
        .zip(rep.alphabet())
        .map(|(m, x)| permutation_of(m).ok_or_else(|| Error::NotMonomial(x.clone())))
        .collect::<Result<_>>()?;
    let d = rep.dim();
    let su: Vec<bool> = rep.initial().iter().map(|x| !x.is_zero()).collect();
    let sv: Vec<bool> = rep.final_vector().iter().map(|x| !x.is_zero()).collect();
    let overlap = |s: &[usize]| (0..d).filter(|&i| su[i] && sv[s[i]]).count();
    let id: Vec<usize> = (0..d).collect();
    let mut best = (overlap(&id), Vec::new());
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut queue = VecDeque::from([(id, Vec::<usize>::new())]);
    while let Some((s, w)) = queue.pop_front() {
        for (x, p) in perms.iter().enumerate() {
            // the support of μ(w x) sends i to p(s(i))
            let t: Vec<usize> = s.iter().map(|&j| p[j]).collect();
            if seen.contains_key(&t) {
                continue;
            }
            let mut w2 = w.clone();
            w2.push(x);
            let o = overlap(&t);
            if o > best.0 {
                best = (o, w2.clone());
            }
            seen.insert(t.clone(), ());
            queue.push_back((t, w2));
        }
    }
    Ok(best)
}

pub fn ambiguity_degree(rep: &LinRep) -> Result<usize> {
    Ok(ambiguity_degree_with_witness(rep)?.0)
}

fn gamma_generators(rep: &LinRep) -> Vec<FieldElement> {
    let mut out: Vec<FieldElement> = rep
        .initial()
        .iter()
        .chain(rep.final_vector().iter())
        .chain(rep.transitions().iter().flat_map(|m| m.entries().iter()))
        .filter(|x| !x.is_zero())
        .cloned()
        .collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    out
}

fn empty_certificate(rep: &LinRep) -> Result<EpimonomialCertificate> {
    let g = transition_group(rep)?;
    match decide_virtually_diagonalizable(&g, &SearchConfig::default())? {
        GroupDecision::Certificate(c) => Ok(c),
        GroupDecision::Refutation(_) => Err(Error::InvalidCertificate("trivial group refuted".into())),
    }
}

/// Places the series in the ambiguity hierarchy, with synthesized automata or
/// refutation witnesses as evidence.
pub fn classify_series(rep: &LinRep, cfg: &SearchConfig) -> Result<SeriesClassification> {
    let minimal = minimize(rep);
    if minimal.dim() == 0 {
        let group_certificate = empty_certificate(&minimal)?;
        let certificate = AmbiguityCertificate {
            minimal_m: 0,
            gamma_generators: Vec::new(),
            synthesized: minimal.clone(),
            group_certificate,
            witness_word: Vec::new(),
        };
        return Ok(SeriesClassification::FinitelyAmbiguousEquivalent { minimal, certificate });
    }
    if !is_invertible(&minimal) {
        return Err(Error::OutOfScope("the minimal representation has a singular transition matrix".into()));
    }
    let g = transition_group(&minimal)?;
    let group_refutation = match decide_virtually_diagonalizable(&g, cfg)? {
        GroupDecision::Certificate(c) => {
            let synthesized = monomialize(&minimal, &c)?;
            let (minimal_m, witness_word) = ambiguity_degree_with_witness(&synthesized)?;
            let certificate = AmbiguityCertificate {
                minimal_m,
                gamma_generators: gamma_generators(&synthesized),
                synthesized,
                group_certificate: c,
                witness_word,
            };
            return Ok(SeriesClassification::FinitelyAmbiguousEquivalent { minimal, certificate });
        }
        GroupDecision::Refutation(r) => r,
    };
    match decide_fg_spectrum(&g, cfg)? {
        SpectrumDecision::Certificate(spectrum) => {
            let (synthesized, level_dims) = block_monomialize(&minimal, &spectrum)?;
            Ok(SeriesClassification::PolynomiallyAmbiguousEquivalent { minimal, group_refutation, spectrum, synthesized, level_dims })
        }
        SpectrumDecision::Refutation(spectrum_refutation) => {
            Ok(SeriesClassification::ExponentialOnly { minimal, group_refutation, spectrum_refutation })
        }
    }
}

fn is_block_monomial(rep: &LinRep, level_dims: &[usize]) -> bool {
    rep.transitions().iter().all(|m| {
        let mut off = 0;
        for &s in level_dims {
            let idx: Vec<usize> = (off..off + s).collect();
            let below: Vec<usize> = (off + s..m.rows()).collect();
            if !m.submatrix(&idx, &idx).is_monomial() || !m.submatrix(&below, &idx).is_zero() {
                return false;
            }
            off += s;
        }
        off == m.rows()
    })
}

/// Re-checks every claim of a classification against the input automaton.
pub fn verify_classification(rep: &LinRep, c: &SeriesClassification) -> Result<()> {
    let minimal = c.minimal();
    if !equivalent(rep, minimal)? || minimize(minimal).dim() != minimal.dim() {
        return Err(Error::InvalidCertificate("minimal representation is not a minimal equivalent".into()));
    }
    match c {
        SeriesClassification::FinitelyAmbiguousEquivalent { certificate, .. } => {
            let s = &certificate.synthesized;
            if !equivalent(rep, s)? {
                return Err(Error::InvalidCertificate("synthesized automaton is not equivalent".into()));
            }
            if minimal.dim() > 0 {
                verify_certificate(&transition_group(minimal)?, &certificate.group_certificate)?;
            }
            let (m, _) = ambiguity_degree_with_witness(s)?;
            if m != certificate.minimal_m {
                return Err(Error::InvalidCertificate("reported degree differs from the synthesized automaton's".into()));
            }
            if crate::wfa::count_runs(s, &certificate.witness_word)? != num_bigint::BigUint::from(m) {
                return Err(Error::InvalidCertificate("witness word does not attain the degree".into()));
            }
            if gamma_generators(s) != certificate.gamma_generators {
                return Err(Error::InvalidCertificate("weight generators do not match".into()));
            }
        }
        SeriesClassification::PolynomiallyAmbiguousEquivalent { group_refutation, spectrum, synthesized, level_dims, .. } => {
            let g = transition_group(minimal)?;
            verify_refutation(&g, group_refutation)?;
            verify_spectrum_certificate(&g, spectrum)?;
            if !equivalent(rep, synthesized)? || !is_block_monomial(synthesized, level_dims) {
                return Err(Error::InvalidCertificate("synthesized automaton is not an equivalent block-monomial automaton".into()));
            }
            if structural_ambiguity(synthesized).class > AmbiguityClass::PolynomiallyAmbiguous {
                return Err(Error::InvalidCertificate("synthesized automaton is exponentially ambiguous".into()));
            }
        }
        SeriesClassification::ExponentialOnly { group_refutation, spectrum_refutation, .. } => {
            let g = transition_group(minimal)?;
            verify_refutation(&g, group_refutation)?;
            verify_spectrum_refutation(&g, spectrum_refutation)?;
        }
    }
    Ok(())
}

/// A linear recurrence classified over its field and over the splitting field
/// of its characteristic polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct LrsClassification {
    pub base: SeriesClassification,
    /// Present when the splitting field is a proper extension.
    pub improvement: Option<LrsImprovement>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LrsImprovement {
    pub field: NumberField,
    pub embedding: Embedding,
    pub classification: SeriesClassification,
}

/// Embeds an automaton into an extension field.
pub fn embed_rep(rep: &LinRep, emb: &Embedding) -> Result<LinRep> {
    LinRep::new(
        emb.target(),
        rep.alphabet().to_vec(),
        rep.initial().iter().map(|x| emb.apply(x)).collect(),
        rep.final_vector().iter().map(|x| emb.apply(x)).collect(),
        rep.transitions().iter().map(|m| m.embed(emb)).collect(),
    )
}

pub fn lrs_classify(
    field: &NumberField,
    u: Vector,
    a: Matrix,
    v: Vector,
    cfg: &SearchConfig,
) -> Result<LrsClassification> {
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    let rep = LinRep::new(field, vec!["x".into()], u, v, vec![a])?;
    lrs_classify_rep(&rep, cfg)
}

/// One-letter specialization of [`classify_series`].
pub fn lrs_classify_rep(rep: &LinRep, cfg: &SearchConfig) -> Result<LrsClassification> {
    if rep.alphabet().len() != 1 {
        return Err(Error::OutOfScope("a recurrence needs exactly one letter".into()));
    }
    if !rep.transition(0).is_invertible() {
        return Err(Error::Singular);
    }
    let base = classify_series(rep, cfg)?;
    let minimal = base.minimal();
    let improvement = if minimal.dim() == 0 {
        None
    } else {
        let sf = splitting_field(&minimal.transition(0).charpoly()?);
        if sf.field.degree() == rep.field().degree() {
            None
        } else {
            let classification = classify_series(&embed_rep(rep, &sf.embedding)?, cfg)?;
            Some(LrsImprovement { field: sf.field, embedding: sf.embedding, classification })
        }
    };
    Ok(LrsClassification { base, improvement })
}

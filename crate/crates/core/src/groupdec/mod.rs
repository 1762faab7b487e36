//! Decision procedure for virtually simultaneously diagonalizable groups, with
//! certificates, refutation witnesses and the monomial lift.

mod lift;
pub mod pattern;
mod verify;
pub mod word;

use std::collections::{HashMap, VecDeque};
use std::fmt;

pub use lift::{monomial_lift, MonomialLift};
pub(crate) use lift::lift_with_bases;
pub use pattern::{acts_diagonally, monomial_pattern, MonomialPattern};
pub use verify::{verify_certificate, verify_refutation};
pub use word::{Letter, Word};

use crate::config::{gl_f3_order, SearchConfig};
use crate::error::{Error, Result};
use crate::exactfield::NumberField;
use crate::exactlinalg::{Decomposition, Matrix};
use crate::spectral::{self, eigenspaces, separating_element};

/// A finitely generated matrix group given by invertible generators.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupInput {
    field: NumberField,
    dim: usize,
    generators: Vec<Matrix>,
    inverses: Vec<Matrix>,
}

impl GroupInput {
    pub fn new(field: &NumberField, dim: usize, generators: Vec<Matrix>) -> Result<Self> {
        let mut inverses = Vec::with_capacity(generators.len());
        for g in &generators {
            if !g.is_square() {
                return Err(Error::NonSquare { rows: g.rows(), cols: g.cols() });
            }
            if g.rows() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.rows() });
            }
            if !g.field().same(field) {
                return Err(Error::FieldMismatch);
            }
            inverses.push(g.inverse().map_err(|_| Error::NotInvertible)?);
        }
        Ok(GroupInput { field: field.clone(), dim, generators, inverses })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn inverses(&self) -> &[Matrix] {
        &self.inverses
    }

    pub fn evaluate(&self, w: &Word) -> Result<Matrix> {
        if self.generators.is_empty() {
            if w.is_empty() {
                return Ok(Matrix::identity(&self.field, self.dim));
            }
            return Err(Error::InvalidCertificate("word over an empty generating set".into()));
        }
        w.evaluate(&self.generators, &self.inverses)
    }

    pub(crate) fn letter(&self, l: Letter) -> &Matrix {
        if l.inverse {
            &self.inverses[l.generator]
        } else {
            &self.generators[l.generator]
        }
    }

    /// Letters in processing order: generators, then inverses.
    pub(crate) fn letters(&self) -> Vec<Letter> {
        let m = self.generators.len();
        (0..m)
            .map(|i| Letter { generator: i, inverse: false })
            .chain((0..m).map(|i| Letter { generator: i, inverse: true }))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpimonomialCertificate {
    pub decomposition: Decomposition,
    pub steady_basis: Vec<(Word, Matrix)>,
    /// Representatives of the cosets of the diagonal, identity first.
    pub coset_reps: Vec<(Word, Matrix)>,
    /// Per generator, the piece permutation.
    pub permutation_images: Vec<Vec<usize>>,
    pub diagonal_index: usize,
    /// `coset_table[g][j] = t` when `g·R_j` lies in the coset of `R_t`.
    pub coset_table: Vec<Vec<usize>>,
    /// Exponents of a product of the steady basis with pairwise distinct,
    /// non-root-of-unity-related scalars on the pieces.
    pub separating_exponents: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RefutationKind {
    NonDiagonalizable,
    NotPowerSplitting,
    IncompatibleSteadyPair,
}

impl fmt::Display for RefutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RefutationKind::NonDiagonalizable => "NonDiagonalizable",
            RefutationKind::NotPowerSplitting => "NotPowerSplitting",
            RefutationKind::IncompatibleSteadyPair => "IncompatibleSteadyPair",
        };
        write!(f, "{s}")
    }
}

/// Steady elements whose joint eigenspaces fail to span the space.
#[derive(Clone, Debug, PartialEq)]
pub struct IncompatibleSteadies {
    pub steadies: Vec<(Word, Matrix)>,
    pub partial: Decomposition,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RefutationWitness {
    pub word: Word,
    pub matrix: Matrix,
    pub kind: RefutationKind,
    pub detail: Option<IncompatibleSteadies>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroupDecision {
    Certificate(EpimonomialCertificate),
    Refutation(RefutationWitness),
}

impl GroupDecision {
    pub fn certificate(&self) -> Option<&EpimonomialCertificate> {
        match self {
            GroupDecision::Certificate(c) => Some(c),
            GroupDecision::Refutation(_) => None,
        }
    }

    pub fn refutation(&self) -> Option<&RefutationWitness> {
        match self {
            GroupDecision::Refutation(r) => Some(r),
            GroupDecision::Certificate(_) => None,
        }
    }
}

/// Whether `a` acts as a scalar on every piece of the certificate's decomposition.
pub fn diagonal_membership(a: &Matrix, cert: &EpimonomialCertificate) -> bool {
    acts_diagonally(a, &cert.decomposition)
}

enum Screen {
    Pass,
    Refute(RefutationWitness),
    NewSteady(Word, Matrix),
}

fn refute(word: Word, matrix: Matrix, kind: RefutationKind) -> Screen {
    Screen::Refute(RefutationWitness { word, matrix, kind, detail: None })
}

/// Screens one group element before its pattern is recorded.
fn screen(word: &Word, m: &Matrix, d: Option<&Decomposition>) -> Result<Screen> {
    if !m.is_diagonalizable()? {
        return Ok(refute(word.clone(), m.clone(), RefutationKind::NonDiagonalizable));
    }
    let Some(n) = spectral::steady_exponent(m)? else {
        return Ok(refute(word.clone(), m.clone(), RefutationKind::NotPowerSplitting));
    };
    let s = m.pow(n as i64)?;
    match d {
        Some(d) if acts_diagonally(&s, d) => Ok(Screen::Pass),
        _ => Ok(Screen::NewSteady(word.power(n), s)),
    }
}

/// Joint eigenspaces of the steady set, or a refutation naming a failing subset
/// (a pair whenever a pair already fails).
fn joint_decomposition(g: &GroupInput, steadies: &[(Word, Matrix)]) -> Result<std::result::Result<Decomposition, RefutationWitness>> {
    let mut d = Decomposition::trivial(&g.field, g.dim);
    for (idx, (w, s)) in steadies.iter().enumerate() {
        let next = d.refine(&g.field, &eigenspaces(s)?)?;
        if next.is_partial() {
            return Ok(Err(incompatible(g, steadies, idx, w, s, next)?));
        }
        d = next;
    }
    Ok(Ok(d))
}

fn incompatible(
    g: &GroupInput,
    steadies: &[(Word, Matrix)],
    idx: usize,
    w: &Word,
    s: &Matrix,
    partial: Decomposition,
) -> Result<RefutationWitness> {
    let es = eigenspaces(s)?;
    for (w0, s0) in &steadies[..idx] {
        let pd = Decomposition::trivial(&g.field, g.dim).refine(&g.field, &eigenspaces(s0)?)?.refine(&g.field, &es)?;
        if pd.is_partial() {
            return Ok(RefutationWitness {
                word: w.clone(),
                matrix: s.clone(),
                kind: RefutationKind::IncompatibleSteadyPair,
                detail: Some(IncompatibleSteadies { steadies: vec![(w0.clone(), s0.clone()), (w.clone(), s.clone())], partial: pd }),
            });
        }
    }
    Ok(RefutationWitness {
        word: w.clone(),
        matrix: s.clone(),
        kind: RefutationKind::IncompatibleSteadyPair,
        detail: Some(IncompatibleSteadies { steadies: steadies[..=idx].to_vec(), partial }),
    })
}

/// Conjugation saturation: refine by conjugates of steady elements until stable.
fn saturate(g: &GroupInput, steadies: &mut Vec<(Word, Matrix)>, mut d: Decomposition) -> Result<std::result::Result<Decomposition, RefutationWitness>> {
    'sweep: loop {
        for l in g.letters() {
            let gm = g.letter(l);
            let gi = g.letter(Letter { generator: l.generator, inverse: !l.inverse });
            for idx in 0..steadies.len() {
                let (w, s) = steadies[idx].clone();
                let conj = gm.mul(&s).mul(gi);
                let next = d.refine(&g.field, &eigenspaces(&conj)?)?;
                let cw = w.conjugate_by(l);
                if next.is_partial() {
                    let mut all = steadies.clone();
                    all.push((cw.clone(), conj.clone()));
                    let n = all.len() - 1;
                    return Ok(Err(incompatible(g, &all, n, &cw, &conj, next)?));
                }
                if next.len() > d.len() {
                    d = next;
                    steadies.push((cw, conj));
                    continue 'sweep;
                }
            }
        }
        return Ok(Ok(d));
    }
}

/// Decides whether the group is virtually simultaneously diagonalizable over its
/// field, returning a certificate or a refutation witness.
pub fn decide_virtually_diagonalizable(g: &GroupInput, cfg: &SearchConfig) -> Result<GroupDecision> {
    let cap = cfg.bfs_cap.unwrap_or_else(|| gl_f3_order(g.dim * g.field.degree()));
    let mut steadies: Vec<(Word, Matrix)> = Vec::new();
    for (i, m) in g.generators.iter().enumerate() {
        match screen(&Word::generator(i), m, None)? {
            Screen::Refute(r) => return Ok(GroupDecision::Refutation(r)),
            Screen::NewSteady(w, s) => steadies.push((w, s)),
            Screen::Pass => unreachable!(),
        }
    }
    let max_rounds = g.dim + 1;
    for _round in 0..=max_rounds {
        let d = match joint_decomposition(g, &steadies)? {
            Ok(d) => d,
            Err(r) => return Ok(GroupDecision::Refutation(r)),
        };
        let d = match saturate(g, &mut steadies, d)? {
            Ok(d) => d,
            Err(r) => return Ok(GroupDecision::Refutation(r)),
        };
        for m in &g.generators {
            if monomial_pattern(m, &d).is_none() {
                return Err(Error::InvalidDecomposition("saturated decomposition is not permuted by a generator".into()));
            }
        }
        match closure(g, &d, cap)? {
            Closure::Refute(r) => return Ok(GroupDecision::Refutation(r)),
            Closure::NewSteady(w, s) => steadies.push((w, s)),
            Closure::Closed { reps, table } => {
                let steady_mats: Vec<Matrix> = steadies.iter().map(|(_, s)| s.clone()).collect();
                let (_, separating_exponents) = separating_element(&steady_mats, &d, cfg.radius_cap)?;
                let permutation_images =
                    g.generators.iter().map(|m| monomial_pattern(m, &d).unwrap().permutation).collect();
                let diagonal_index = reps.len();
                return Ok(GroupDecision::Certificate(EpimonomialCertificate {
                    decomposition: d,
                    steady_basis: steadies,
                    coset_reps: reps,
                    permutation_images,
                    diagonal_index,
                    coset_table: table,
                    separating_exponents,
                }));
            }
        }
    }
    Err(Error::SearchBudgetExceeded("refinement rounds exhausted".into()))
}

enum Closure {
    Refute(RefutationWitness),
    NewSteady(Word, Matrix),
    Closed { reps: Vec<(Word, Matrix)>, table: Vec<Vec<usize>> },
}

fn closure(g: &GroupInput, d: &Decomposition, cap: u64) -> Result<Closure> {
    let id = Matrix::identity(&g.field, g.dim);
    let mut reps: Vec<(Word, Matrix)> = vec![(Word::empty(), id.clone())];
    let mut index: HashMap<MonomialPattern, usize> = HashMap::new();
    index.insert(monomial_pattern(&id, d).expect("identity permutes pieces"), 0);
    let mut queue = VecDeque::from([0usize]);
    let m = g.generators.len();
    let mut table = vec![Vec::new(); m];
    let letters = g.letters();
    while let Some(j) = queue.pop_front() {
        for &l in &letters {
            let (w, r) = &reps[j];
            let prod = g.letter(l).mul(r);
            let pat = monomial_pattern(&prod, d)
                .ok_or_else(|| Error::InvalidDecomposition("product does not permute pieces".into()))?;
            let t = match index.get(&pat) {
                Some(&t) => t,
                None => {
                    let pw = Word(vec![l]).concat(w);
                    match screen(&pw, &prod, Some(d))? {
                        Screen::Refute(r) => return Ok(Closure::Refute(r)),
                        Screen::NewSteady(sw, s) => return Ok(Closure::NewSteady(sw, s)),
                        Screen::Pass => {}
                    }
                    if reps.len() as u64 >= cap {
                        return Err(Error::SearchBudgetExceeded(format!("coset closure exceeded {cap} patterns")));
                    }
                    reps.push((pw, prod));
                    index.insert(pat, reps.len() - 1);
                    queue.push_back(reps.len() - 1);
                    reps.len() - 1
                }
            };
            if !l.inverse {
                let row = &mut table[l.generator];
                if row.len() <= j {
                    row.resize(j + 1, usize::MAX);
                }
                row[j] = t;
            }
        }
    }
    Ok(Closure::Closed { reps, table })
}

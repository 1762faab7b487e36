//! Weighted automata as linear representations `(u, μ, v)`.

mod ambiguity;

pub use ambiguity::{structural_ambiguity, AmbiguityClass, PumpingWitness, StructuralReport};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, NumberField};
use crate::exactlinalg::{EchelonBasis, Matrix, Vector};

#[derive(Clone, Debug, PartialEq)]
pub struct LinRep {
    field: NumberField,
    alphabet: Vec<String>,
    dim: usize,
    initial: Vector,
    final_: Vector,
    /// One matrix per letter, in alphabet order.
    transitions: Vec<Matrix>,
}

impl LinRep {
    pub fn new(
        field: &NumberField,
        alphabet: Vec<String>,
        initial: Vector,
        final_: Vector,
        transitions: Vec<Matrix>,
    ) -> Result<Self> {
        let dim = initial.len();
        if final_.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: final_.len() });
        }
        if transitions.len() != alphabet.len() {
            return Err(Error::DimensionMismatch { expected: alphabet.len(), found: transitions.len() });
        }
        for (i, a) in alphabet.iter().enumerate() {
            if a.is_empty() || alphabet[..i].contains(a) {
                return Err(Error::Parse(format!("invalid or repeated letter {a:?}")));
            }
        }
        for m in &transitions {
            if !m.field().same(field) {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.rows().max(m.cols()) });
            }
        }
        for x in initial.iter().chain(final_.iter()) {
            if !x.field().same(field) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(LinRep { field: field.clone(), alphabet, dim, initial, final_, transitions })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn initial(&self) -> &Vector {
        &self.initial
    }

    pub fn final_vector(&self) -> &Vector {
        &self.final_
    }

    pub fn transitions(&self) -> &[Matrix] {
        &self.transitions
    }

    pub fn transition(&self, letter: usize) -> &Matrix {
        &self.transitions[letter]
    }

    pub fn letter_index(&self, symbol: &str) -> Result<usize> {
        self.alphabet.iter().position(|a| a == symbol).ok_or_else(|| Error::UnknownLetter(symbol.to_string()))
    }

    /// Parses a word: comma-separated symbols, or single characters when every
    /// letter is one character long.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        if s.contains(',') {
            return s.split(',').map(|t| self.letter_index(t.trim())).collect();
        }
        if self.alphabet.iter().all(|a| a.chars().count() == 1) {
            return s.chars().filter(|c| !c.is_whitespace()).map(|c| self.letter_index(&c.to_string())).collect();
        }
        s.split_whitespace().map(|t| self.letter_index(t)).collect()
    }

    /// Renders a word in the form accepted by [`LinRep::parse_word`].
    pub fn render_word(&self, w: &[usize]) -> String {
        let single = self.alphabet.iter().all(|a| a.chars().count() == 1);
        let parts: Vec<&str> = w.iter().map(|&i| self.alphabet[i].as_str()).collect();
        if single {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    fn check_word(&self, w: &[usize]) -> Result<()> {
        match w.iter().find(|&&x| x >= self.alphabet.len()) {
            Some(x) => Err(Error::UnknownLetter(format!("#{x}"))),
            None => Ok(()),
        }
    }

    /// `T μ T⁻¹` with `u ↦ u T⁻¹`, `v ↦ T v`.
    pub fn conjugate(&self, t: &Matrix) -> Result<LinRep> {
        let ti = t.inverse()?;
        Ok(LinRep {
            field: self.field.clone(),
            alphabet: self.alphabet.clone(),
            dim: self.dim,
            initial: ti.vec_mul(&self.initial),
            final_: t.mul_vec(&self.final_),
            transitions: self.transitions.iter().map(|m| t.mul(m).mul(&ti)).collect(),
        })
    }

    /// Keeps only the listed states, in the given order.
    pub fn restrict_states(&self, states: &[usize]) -> LinRep {
        LinRep {
            field: self.field.clone(),
            alphabet: self.alphabet.clone(),
            dim: states.len(),
            initial: states.iter().map(|&i| self.initial[i].clone()).collect(),
            final_: states.iter().map(|&i| self.final_[i].clone()).collect(),
            transitions: self.transitions.iter().map(|m| m.submatrix(states, states)).collect(),
        }
    }

    /// Every word of length at most `n`, in length-then-lexicographic order.
    pub fn words_up_to(&self, n: usize) -> Vec<Vec<usize>> {
        let k = self.alphabet.len();
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(layer.len() * k);
            for w in &layer {
                for x in 0..k {
                    let mut w2: Vec<usize> = w.clone();
                    w2.push(x);
                    next.push(w2);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

pub fn evaluate(rep: &LinRep, w: &[usize]) -> Result<FieldElement> {
    rep.check_word(w)?;
    let mut row = rep.initial.clone();
    for &x in w {
        row = rep.transitions[x].vec_mul(&row);
    }
    Ok(dot(&row, &rep.final_, &rep.field))
}

fn dot(a: &[FieldElement], b: &[FieldElement], f: &NumberField) -> FieldElement {
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { &acc + &(x * y) })
}

/// Number of state sequences whose initial weight, transition weights, and
/// final weight are all nonzero.
pub fn count_runs(rep: &LinRep, w: &[usize]) -> Result<BigUint> {
    rep.check_word(w)?;
    let mut counts: Vec<BigUint> =
        rep.initial.iter().map(|x| if x.is_zero() { BigUint::zero() } else { BigUint::one() }).collect();
    for &x in w {
        let m = &rep.transitions[x];
        let mut next = vec![BigUint::zero(); rep.dim];
        for (p, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (q, slot) in next.iter_mut().enumerate() {
                if !m.get(p, q).is_zero() {
                    *slot += c;
                }
            }
        }
        counts = next;
    }
    Ok(counts.iter().zip(&rep.final_).filter(|(_, v)| !v.is_zero()).map(|(c, _)| c).sum())
}

/// Successor lists of the support digraph, all letters merged.
pub(crate) fn support_successors(rep: &LinRep) -> Vec<Vec<usize>> {
    (0..rep.dim)
        .map(|p| (0..rep.dim).filter(|&q| rep.transitions.iter().any(|m| !m.get(p, q).is_zero())).collect())
        .collect()
}

fn reach(starts: impl Iterator<Item = usize>, adj: &[Vec<usize>]) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in starts {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(p) = queue.pop_front() {
        for &q in &adj[p] {
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    seen
}

/// States lying on some successful support path, in increasing order.
pub fn useful_states(rep: &LinRep) -> Vec<usize> {
    let succ = support_successors(rep);
    let mut pred = vec![Vec::new(); rep.dim];
    for (p, qs) in succ.iter().enumerate() {
        for &q in qs {
            pred[q].push(p);
        }
    }
    let fwd = reach((0..rep.dim).filter(|&i| !rep.initial[i].is_zero()), &succ);
    let bwd = reach((0..rep.dim).filter(|&i| !rep.final_[i].is_zero()), &pred);
    (0..rep.dim).filter(|&i| fwd[i] && bwd[i]).collect()
}

pub fn trim(rep: &LinRep) -> LinRep {
    rep.restrict_states(&useful_states(rep))
}

/// Forward reachable span of `u μ(w)`, explored by word length then letter
/// order, together with the words reaching each basis vector.
fn forward_span(rep: &LinRep) -> (EchelonBasis, Vec<Vec<usize>>) {
    let mut span = EchelonBasis::new(&rep.field, rep.dim);
    let mut words: Vec<Vec<usize>> = Vec::new();
    if span.insert(rep.initial.clone()) {
        words.push(Vec::new());
    }
    let mut next = 0;
    while next < span.len() {
        let v = span.vectors()[next].clone();
        let w = words[next].clone();
        next += 1;
        for (x, m) in rep.transitions.iter().enumerate() {
            if span.insert(m.vec_mul(&v)) {
                let mut w2 = w.clone();
                w2.push(x);
                words.push(w2);
            }
        }
    }
    (span, words)
}

fn backward_span(rep: &LinRep) -> EchelonBasis {
    let mut span = EchelonBasis::new(&rep.field, rep.dim);
    span.insert(rep.final_.clone());
    let mut next = 0;
    while next < span.len() {
        let v = span.vectors()[next].clone();
        next += 1;
        for m in &rep.transitions {
            span.insert(m.mul_vec(&v));
        }
    }
    span
}

fn unit(f: &NumberField, n: usize, i: usize) -> Vector {
    let mut e = vec![f.zero(); n];
    e[i] = f.one();
    e
}

fn forward_reduce(rep: &LinRep) -> LinRep {
    let f = &rep.field;
    let (span, _) = forward_span(rep);
    let r = span.len();
    let basis = span.vectors();
    let transitions = rep
        .transitions
        .iter()
        .map(|m| {
            let rows: Vec<Vector> = basis.iter().map(|b| span.express(&m.vec_mul(b)).expect("forward span is closed")).collect();
            if r == 0 {
                Matrix::zeros(f, 0, 0)
            } else {
                Matrix::from_rows(f, rows)
            }
        })
        .collect();
    let initial = if r == 0 { Vec::new() } else { unit(f, r, 0) };
    let final_ = basis.iter().map(|b| dot(b, &rep.final_, f)).collect();
    LinRep { field: f.clone(), alphabet: rep.alphabet.clone(), dim: r, initial, final_, transitions }
}

fn backward_reduce(rep: &LinRep) -> LinRep {
    let f = &rep.field;
    let span = backward_span(rep);
    let s = span.len();
    let basis = span.vectors();
    let transitions = rep
        .transitions
        .iter()
        .map(|m| {
            let cols: Vec<Vector> = basis.iter().map(|b| span.express(&m.mul_vec(b)).expect("backward span is closed")).collect();
            Matrix::from_cols(f, &cols, s)
        })
        .collect();
    let initial = basis.iter().map(|b| dot(&rep.initial, b, f)).collect();
    let final_ = if s == 0 { Vec::new() } else { unit(f, s, 0) };
    LinRep { field: f.clone(), alphabet: rep.alphabet.clone(), dim: s, initial, final_, transitions }
}

/// An equivalent representation of minimal dimension.
pub fn minimize(rep: &LinRep) -> LinRep {
    backward_reduce(&forward_reduce(rep))
}

fn difference(a: &LinRep, b: &LinRep) -> Result<LinRep> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    if !a.field.same(&b.field) {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let mut initial = a.initial.clone();
    initial.extend(b.initial.iter().map(|x| -x));
    let mut final_ = a.final_.clone();
    final_.extend(b.final_.iter().cloned());
    let transitions = a
        .transitions
        .iter()
        .zip(&b.transitions)
        .map(|(x, y)| {
            Matrix::block(f, &[vec![x.clone(), Matrix::zeros(f, a.dim, b.dim)], vec![Matrix::zeros(f, b.dim, a.dim), y.clone()]])
        })
        .collect();
    Ok(LinRep { field: f.clone(), alphabet: a.alphabet.clone(), dim: a.dim + b.dim, initial, final_, transitions })
}

/// A shortest word on which the two behaviors differ, if any.
pub fn distinguishing_word(a: &LinRep, b: &LinRep) -> Result<Option<Vec<usize>>> {
    let d = difference(a, b)?;
    let (span, words) = forward_span(&d);
    for (v, w) in span.vectors().iter().zip(words) {
        if !dot(v, &d.final_, &d.field).is_zero() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn equivalent(a: &LinRep, b: &LinRep) -> Result<bool> {
    Ok(distinguishing_word(a, b)?.is_none())
}

pub fn is_invertible(rep: &LinRep) -> bool {
    rep.transitions.iter().all(|m| m.is_invertible())
}

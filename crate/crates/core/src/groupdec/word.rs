//! Words over generators and their inverses.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactlinalg::Matrix;

/// A letter is a zero-based generator index with an inverse flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A group word, read left to right as a matrix product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Word(vec![Letter { generator: i, inverse: false }])
    }

    pub fn inverse_generator(i: usize) -> Self {
        Word(vec![Letter { generator: i, inverse: true }])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().copied());
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| Letter { generator: l.generator, inverse: !l.inverse }).collect())
    }

    pub fn power(&self, n: u64) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * n as usize);
        for _ in 0..n {
            v.extend(self.0.iter().copied());
        }
        Word(v)
    }

    /// `g · self · g⁻¹` for a single letter.
    pub fn conjugate_by(&self, g: Letter) -> Word {
        let gi = Letter { generator: g.generator, inverse: !g.inverse };
        let mut v = vec![g];
        v.extend(self.0.iter().copied());
        v.push(gi);
        Word(v)
    }

    /// Evaluates against generators and their precomputed inverses.
    pub fn evaluate(&self, gens: &[Matrix], inverses: &[Matrix]) -> Result<Matrix> {
        let n = gens.first().map(|g| g.rows()).ok_or_else(|| Error::InvalidCertificate("no generators".into()))?;
        let mut acc = Matrix::identity(gens[0].field(), n);
        for l in &self.0 {
            let m = if l.inverse { inverses.get(l.generator) } else { gens.get(l.generator) };
            let m = m.ok_or_else(|| Error::InvalidCertificate(format!("generator index {} out of range", l.generator + 1)))?;
            acc = acc.mul(m);
        }
        Ok(acc)
    }

    /// Renders with custom generator names (used for automaton letters).
    pub fn render(&self, names: &[String]) -> String {
        self.0
            .iter()
            .map(|l| {
                let base = names.get(l.generator).cloned().unwrap_or_else(|| format!("g{}", l.generator + 1));
                if l.inverse {
                    format!("{base}^-1")
                } else {
                    base
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses space-separated tokens `g<k>` or `g<k>^-1` (one-based).
    fn from_str(s: &str) -> Result<Word> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (base, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let idx: usize = base
                .strip_prefix('g')
                .and_then(|d| d.parse().ok())
                .filter(|&k: &usize| k >= 1)
                .ok_or_else(|| Error::Parse(format!("invalid word token {tok:?}")))?;
            out.push(Letter { generator: idx - 1, inverse });
        }
        Ok(Word(out))
    }
}

//! Ambiguity classes read off the support digraph.

use std::collections::VecDeque;

use super::{trim, LinRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AmbiguityClass {
    Deterministic,
    Unambiguous,
    FinitelyAmbiguous,
    PolynomiallyAmbiguous,
    ExponentiallyAmbiguous,
}

impl AmbiguityClass {
    pub fn name(&self) -> &'static str {
        match self {
            AmbiguityClass::Deterministic => "Deterministic",
            AmbiguityClass::Unambiguous => "Unambiguous",
            AmbiguityClass::FinitelyAmbiguous => "FinitelyAmbiguous",
            AmbiguityClass::PolynomiallyAmbiguous => "PolynomiallyAmbiguous",
            AmbiguityClass::ExponentiallyAmbiguous => "ExponentiallyAmbiguous",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            AmbiguityClass::Deterministic,
            AmbiguityClass::Unambiguous,
            AmbiguityClass::FinitelyAmbiguous,
            AmbiguityClass::PolynomiallyAmbiguous,
            AmbiguityClass::ExponentiallyAmbiguous,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

impl std::fmt::Display for AmbiguityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Words `prefix · cycleⁿ · suffix` along which the number of runs grows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpingWitness {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
    pub suffix: Vec<usize>,
}

impl PumpingWitness {
    pub fn word(&self, n: usize) -> Vec<usize> {
        let mut w = self.prefix.clone();
        for _ in 0..n {
            w.extend_from_slice(&self.cycle);
        }
        w.extend_from_slice(&self.suffix);
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralReport {
    pub deterministic: bool,
    pub unambiguous: bool,
    pub eda: bool,
    pub ida: bool,
    pub class: AmbiguityClass,
    /// Word indices refer to the trimmed automaton's alphabet, which is the input's.
    pub eda_witness: Option<PumpingWitness>,
    pub ida_witness: Option<PumpingWitness>,
}

/// `succ[x][p]`: states reachable from `p` on letter `x`.
struct Support {
    dim: usize,
    succ: Vec<Vec<Vec<usize>>>,
    initial: Vec<usize>,
    terminal: Vec<usize>,
}

impl Support {
    fn new(rep: &LinRep) -> Self {
        let d = rep.dim();
        let succ = rep
            .transitions()
            .iter()
            .map(|m| (0..d).map(|p| (0..d).filter(|&q| !m.get(p, q).is_zero()).collect()).collect())
            .collect();
        Support {
            dim: d,
            succ,
            initial: (0..d).filter(|&i| !rep.initial()[i].is_zero()).collect(),
            terminal: (0..d).filter(|&i| !rep.final_vector()[i].is_zero()).collect(),
        }
    }

    fn letters(&self) -> usize {
        self.succ.len()
    }

    /// Successors of a tuple of states on letter `x`.
    fn tuple_succ(&self, x: usize, t: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for &s in t {
            let nexts = &self.succ[x][s];
            let mut grown = Vec::with_capacity(out.len() * nexts.len());
            for pre in &out {
                for &n in nexts {
                    let mut p = pre.clone();
                    p.push(n);
                    grown.push(p);
                }
            }
            out = grown;
        }
        out
    }

    fn encode(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &s| acc * self.dim + s)
    }

    fn decode(&self, mut code: usize, k: usize) -> Vec<usize> {
        let mut t = vec![0; k];
        for i in (0..k).rev() {
            t[i] = code % self.dim;
            code /= self.dim;
        }
        t
    }

    /// Labeled BFS over `k`-tuples from `starts`, returning parent links.
    fn bfs(&self, k: usize, starts: &[Vec<usize>]) -> Vec<Option<(usize, usize)>> {
        let n = self.dim.pow(k as u32);
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for s in starts {
            let c = self.encode(s);
            if !seen[c] {
                seen[c] = true;
                queue.push_back(c);
            }
        }
        while let Some(c) = queue.pop_front() {
            let t = self.decode(c, k);
            for x in 0..self.letters() {
                for nt in self.tuple_succ(x, &t) {
                    let nc = self.encode(&nt);
                    if !seen[nc] {
                        seen[nc] = true;
                        parent[nc] = Some((c, x));
                        queue.push_back(nc);
                    }
                }
            }
        }
        // Mark start nodes as reached with a self-link sentinel.
        for s in starts {
            let c = self.encode(s);
            parent[c] = Some((usize::MAX, 0));
        }
        parent
    }

    fn path_word(parent: &[Option<(usize, usize)>], target: usize) -> Option<Vec<usize>> {
        let mut w = Vec::new();
        let mut c = target;
        loop {
            match parent[c]? {
                (usize::MAX, _) => break,
                (p, x) => {
                    w.push(x);
                    c = p;
                }
            }
        }
        w.reverse();
        Some(w)
    }

    /// A word leading from `from` (tuple) to `to` (tuple) with at least one letter.
    fn nonempty_path(&self, k: usize, from: &[usize], to: &[usize]) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for x in 0..self.letters() {
            for nt in self.tuple_succ(x, from) {
                let parent = self.bfs(k, &[nt]);
                if let Some(mut w) = Self::path_word(&parent, self.encode(to)) {
                    w.insert(0, x);
                    if best.as_ref().is_none_or(|b| w.len() < b.len()) {
                        best = Some(w);
                    }
                }
            }
        }
        best
    }

    fn prefix_to(&self, p: usize) -> Option<Vec<usize>> {
        let starts: Vec<Vec<usize>> = self.initial.iter().map(|&i| vec![i]).collect();
        Self::path_word(&self.bfs(1, &starts), p)
    }

    fn suffix_from(&self, q: usize) -> Option<Vec<usize>> {
        let parent = self.bfs(1, &[vec![q]]);
        self.terminal
            .iter()
            .filter_map(|&t| Self::path_word(&parent, t))
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
    }

    fn reachable(&self, k: usize, from: &[usize]) -> Vec<bool> {
        self.bfs(k, &[from.to_vec()]).iter().map(|p| p.is_some()).collect()
    }
}

fn is_deterministic(s: &Support) -> bool {
    s.initial.len() <= 1 && s.succ.iter().all(|rows| rows.iter().all(|r| r.len() <= 1))
}

fn is_unambiguous(s: &Support) -> bool {
    let starts: Vec<Vec<usize>> =
        s.initial.iter().flat_map(|&a| s.initial.iter().map(move |&b| vec![a, b])).collect();
    let fwd = s.bfs(2, &starts);
    let n = s.dim * s.dim;
    let mut pred = vec![Vec::new(); n];
    for c in 0..n {
        let t = s.decode(c, 2);
        for x in 0..s.letters() {
            for nt in s.tuple_succ(x, &t) {
                pred[s.encode(&nt)].push(c);
            }
        }
    }
    let mut bwd = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &a in &s.terminal {
        for &b in &s.terminal {
            let c = s.encode(&[a, b]);
            if !bwd[c] {
                bwd[c] = true;
                queue.push_back(c);
            }
        }
    }
    while let Some(c) = queue.pop_front() {
        for &p in &pred[c] {
            if !bwd[p] {
                bwd[p] = true;
                queue.push_back(p);
            }
        }
    }
    (0..n).all(|c| {
        let t = s.decode(c, 2);
        t[0] == t[1] || fwd[c].is_none() || !bwd[c]
    })
}

fn find_eda(s: &Support) -> Option<PumpingWitness> {
    for p in 0..s.dim {
        let fwd = s.reachable(2, &[p, p]);
        for c in 0..fwd.len() {
            let t = s.decode(c, 2);
            if !fwd[c] || t[0] == t[1] {
                continue;
            }
            if let Some(back) = s.nonempty_path(2, &t, &[p, p]) {
                let mut cycle = s.nonempty_path(2, &[p, p], &t)?;
                cycle.extend(back);
                return Some(PumpingWitness { prefix: s.prefix_to(p)?, cycle, suffix: s.suffix_from(p)? });
            }
        }
    }
    None
}

fn find_ida(s: &Support) -> Option<PumpingWitness> {
    let single: Vec<Vec<bool>> = (0..s.dim).map(|p| s.reachable(1, &[p])).collect();
    let on_cycle: Vec<bool> =
        (0..s.dim).map(|p| (0..s.letters()).any(|x| s.succ[x][p].iter().any(|&r| single[r][p]))).collect();
    for p in 0..s.dim {
        for q in 0..s.dim {
            if p == q || !on_cycle[p] || !on_cycle[q] || !single[p][q] {
                continue;
            }
            let reach = s.reachable(3, &[p, p, q]);
            if reach[s.encode(&[p, q, q])] {
                let cycle = s.nonempty_path(3, &[p, p, q], &[p, q, q])?;
                return Some(PumpingWitness { prefix: s.prefix_to(p)?, cycle, suffix: s.suffix_from(q)? });
            }
        }
    }
    None
}

pub fn structural_ambiguity(rep: &LinRep) -> StructuralReport {
    let t = trim(rep);
    let s = Support::new(&t);
    let deterministic = is_deterministic(&s);
    let unambiguous = deterministic || is_unambiguous(&s);
    let eda_witness = if unambiguous { None } else { find_eda(&s) };
    let ida_witness = if unambiguous { None } else { find_ida(&s) };
    let eda = eda_witness.is_some();
    let ida = ida_witness.is_some();
    let class = if eda {
        AmbiguityClass::ExponentiallyAmbiguous
    } else if ida {
        AmbiguityClass::PolynomiallyAmbiguous
    } else if deterministic {
        AmbiguityClass::Deterministic
    } else if unambiguous {
        AmbiguityClass::Unambiguous
    } else {
        AmbiguityClass::FinitelyAmbiguous
    };
    StructuralReport { deterministic, unambiguous, eda, ida, class, eda_witness, ida_witness }
}

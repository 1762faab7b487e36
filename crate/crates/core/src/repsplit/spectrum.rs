use std::collections::{HashMap, VecDeque};

use super::{composition_chain, level_action, lift_quotient_vector, refine_flag};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::groupdec::{
    acts_diagonally, decide_virtually_diagonalizable, monomial_pattern, verify_certificate, verify_refutation,
    EpimonomialCertificate, GroupDecision, GroupInput, MonomialPattern, RefutationWitness, Word,
};
use crate::exactlinalg::{Matrix, Subspace, Vector};

/// An invariant flag over the base field with the generator actions on its
/// successive quotients.
#[derive(Clone, Debug, PartialEq)]
pub struct KFlag {
    /// `0 = W₀ ⊂ … ⊂ W_k = V`.
    pub flag: Vec<Subspace>,
    /// `blocks[i][g]` is generator `g` acting on `W_{i+1}/W_i`.
    pub blocks: Vec<Vec<Matrix>>,
}

impl KFlag {
    fn build(g: &GroupInput, flag: Vec<Subspace>) -> Result<Self> {
        let mut blocks = Vec::with_capacity(flag.len().saturating_sub(1));
        for w in flag.windows(2) {
            blocks.push(level_action(g.generators(), &w[0], &w[1])?.1);
        }
        Ok(KFlag { flag, blocks })
    }

    pub fn levels(&self) -> usize {
        self.blocks.len()
    }

    pub fn level_dim(&self, i: usize) -> usize {
        self.flag[i + 1].dim() - self.flag[i].dim()
    }

    fn level_group(&self, g: &GroupInput, i: usize) -> Result<GroupInput> {
        GroupInput::new(g.field(), self.level_dim(i), self.blocks[i].clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumCertificate {
    pub flag: KFlag,
    pub per_block: Vec<EpimonomialCertificate>,
    /// Representatives of the cosets of the subgroup acting diagonally on every
    /// block, identity first.
    pub coset_reps: Vec<(Word, Matrix)>,
    /// `coset_table[g][a] = b` when `g·A_a` lies in the coset of `A_b`.
    pub coset_table: Vec<Vec<usize>>,
}

impl SpectrumCertificate {
    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRefutation {
    pub flag: KFlag,
    pub block: usize,
    /// The witness for the block group; its word is also a word in the original generators.
    pub witness: RefutationWitness,
    /// The witness word evaluated on the original generators.
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpectrumDecision {
    Certificate(SpectrumCertificate),
    Refutation(SpectrumRefutation),
}

impl SpectrumDecision {
    pub fn certificate(&self) -> Option<&SpectrumCertificate> {
        match self {
            SpectrumDecision::Certificate(c) => Some(c),
            SpectrumDecision::Refutation(_) => None,
        }
    }

    pub fn refutation(&self) -> Option<&SpectrumRefutation> {
        match self {
            SpectrumDecision::Refutation(r) => Some(r),
            SpectrumDecision::Certificate(_) => None,
        }
    }
}

fn level_blocks(m: &Matrix, flag: &[Subspace]) -> Result<Vec<Matrix>> {
    let one = std::slice::from_ref(m);
    flag.windows(2).map(|w| Ok(level_action(one, &w[0], &w[1])?.1.remove(0))).collect()
}

fn pattern_key(blocks: &[Matrix], certs: &[EpimonomialCertificate]) -> Result<Vec<MonomialPattern>> {
    blocks
        .iter()
        .zip(certs)
        .map(|(b, c)| {
            monomial_pattern(b, &c.decomposition).ok_or_else(|| Error::InvalidCertificate("block does not permute its pieces".into()))
        })
        .collect()
}

fn cosets(g: &GroupInput, kflag: &KFlag, certs: &[EpimonomialCertificate]) -> Result<(Vec<(Word, Matrix)>, Vec<Vec<usize>>)> {
    let cap: usize = certs.iter().map(|c| c.diagonal_index).product();
    let levels = kflag.levels();
    let block_inverses: Vec<Vec<Matrix>> =
        kflag.blocks.iter().map(|bs| bs.iter().map(|b| b.inverse()).collect::<Result<_>>()).collect::<Result<_>>()?;
    let f = g.field();
    let id = Matrix::identity(f, g.dim());
    let id_blocks: Vec<Matrix> = (0..levels).map(|i| Matrix::identity(f, kflag.level_dim(i))).collect();
    let mut reps: Vec<(Word, Matrix, Vec<Matrix>)> = vec![(Word::empty(), id, id_blocks.clone())];
    let mut index: HashMap<Vec<MonomialPattern>, usize> = HashMap::new();
    index.insert(pattern_key(&id_blocks, certs)?, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut table = vec![vec![usize::MAX; 1]; g.generators().len()];
    while let Some(j) = queue.pop_front() {
        for l in g.letters() {
            let (w, r, rb) = &reps[j];
            let prod = g.letter(l).mul(r);
            let pb: Vec<Matrix> = (0..levels)
                .map(|i| {
                    let b = if l.inverse { &block_inverses[i][l.generator] } else { &kflag.blocks[i][l.generator] };
                    b.mul(&rb[i])
                })
                .collect();
            let key = pattern_key(&pb, certs)?;
            let t = match index.get(&key) {
                Some(&t) => t,
                None => {
                    if reps.len() >= cap {
                        return Err(Error::InvalidCertificate("more cosets than the block indices allow".into()));
                    }
                    let pw = Word(vec![l]).concat(w);
                    reps.push((pw, prod, pb));
                    index.insert(key, reps.len() - 1);
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
    Ok((reps.into_iter().map(|(w, m, _)| (w, m)).collect(), table))
}

/// Decides whether the group has finitely generated spectrum with power-splitting
/// by splitting into irreducible blocks over the base field and testing each
/// block for virtual diagonalizability.
pub fn decide_fg_spectrum(g: &GroupInput, cfg: &SearchConfig) -> Result<SpectrumDecision> {
    let (_, _, flag) = refine_flag(g.field(), g.dim(), g.generators(), cfg, false)?;
    let kflag = KFlag::build(g, flag)?;
    let mut per_block = Vec::with_capacity(kflag.levels());
    for i in 0..kflag.levels() {
        let bg = kflag.level_group(g, i)?;
        match decide_virtually_diagonalizable(&bg, cfg)? {
            GroupDecision::Certificate(c) => per_block.push(c),
            GroupDecision::Refutation(r) => {
                let matrix = g.evaluate(&r.word)?;
                return Ok(SpectrumDecision::Refutation(SpectrumRefutation { flag: kflag, block: i, witness: r, matrix }));
            }
        }
    }
    let (coset_reps, coset_table) = cosets(g, &kflag, &per_block)?;
    Ok(SpectrumDecision::Certificate(SpectrumCertificate { flag: kflag, per_block, coset_reps, coset_table }))
}

/// Per-block decisions along an absolutely irreducible chain over an extension,
/// each block viewed over the base field by restriction of scalars.
pub fn fg_spectrum_blocks_over_extension(g: &GroupInput, cfg: &SearchConfig) -> Result<Vec<GroupDecision>> {
    let chain = composition_chain(g.field(), g.dim(), g.generators(), cfg)?;
    let dims = chain.block_dims();
    let r = chain.embedding.relative_degree();
    let mut out = Vec::with_capacity(dims.len());
    for (i, &q) in dims.iter().enumerate() {
        let gens: Vec<Matrix> = chain.block_images.iter().map(|per| per[i].restrict_scalars(&chain.embedding)).collect();
        let bg = GroupInput::new(g.field(), q * r, gens)?;
        out.push(decide_virtually_diagonalizable(&bg, cfg)?);
    }
    Ok(out)
}

fn check_flag(g: &GroupInput, kflag: &KFlag) -> Result<()> {
    let f = &kflag.flag;
    if f.is_empty() || !f[0].is_zero() || !f[f.len() - 1].is_full() || f[0].ambient_dim() != g.dim() {
        return Err(Error::InvalidCertificate("flag must run from zero to the whole space".into()));
    }
    for w in f.windows(2) {
        if !w[1].contains(&w[0])? || w[1].dim() <= w[0].dim() {
            return Err(Error::InvalidCertificate("flag is not strictly increasing".into()));
        }
    }
    for w in f {
        for m in g.generators() {
            if !w.is_invariant(m) {
                return Err(Error::InvalidCertificate("flag member is not invariant".into()));
            }
        }
    }
    if KFlag::build(g, f.clone())?.blocks != kflag.blocks {
        return Err(Error::InvalidCertificate("block actions do not match the flag".into()));
    }
    Ok(())
}

pub fn verify_spectrum_certificate(g: &GroupInput, cert: &SpectrumCertificate) -> Result<()> {
    let kflag = &cert.flag;
    check_flag(g, kflag)?;
    if cert.per_block.len() != kflag.levels() {
        return Err(Error::InvalidCertificate("one block certificate per level required".into()));
    }
    for (i, c) in cert.per_block.iter().enumerate() {
        verify_certificate(&kflag.level_group(g, i)?, c)?;
    }
    if cert.coset_reps.first().map(|(w, _)| !w.is_empty()).unwrap_or(true) {
        return Err(Error::InvalidCertificate("first coset representative must be the identity".into()));
    }
    for (w, m) in &cert.coset_reps {
        if &g.evaluate(w)? != m {
            return Err(Error::InvalidCertificate(format!("coset representative {w} does not evaluate to its matrix")));
        }
    }
    let n = cert.coset_reps.len();
    if cert.coset_table.len() != g.generators().len() {
        return Err(Error::InvalidCertificate("coset table needs one row per generator".into()));
    }
    for (gen, row) in g.generators().iter().zip(&cert.coset_table) {
        if row.len() != n {
            return Err(Error::InvalidCertificate("coset table row has wrong length".into()));
        }
        for (a, &b) in row.iter().enumerate() {
            let rb = &cert.coset_reps.get(b).ok_or_else(|| Error::InvalidCertificate("coset index out of range".into()))?.1;
            let h = rb.inverse()?.mul(&gen.mul(&cert.coset_reps[a].1));
            for (blk, c) in level_blocks(&h, &kflag.flag)?.iter().zip(&cert.per_block) {
                if !acts_diagonally(blk, &c.decomposition) {
                    return Err(Error::InvalidCertificate("coset table entry leaves the diagonal subgroup".into()));
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let h = cert.coset_reps[b].1.inverse()?.mul(&cert.coset_reps[a].1);
            let blocks = level_blocks(&h, &kflag.flag)?;
            if blocks.iter().zip(&cert.per_block).all(|(blk, c)| acts_diagonally(blk, &c.decomposition)) {
                return Err(Error::InvalidCertificate("two coset representatives share a coset".into()));
            }
        }
    }
    Ok(())
}

pub fn verify_spectrum_refutation(g: &GroupInput, r: &SpectrumRefutation) -> Result<()> {
    check_flag(g, &r.flag)?;
    if r.block >= r.flag.levels() {
        return Err(Error::InvalidCertificate("block index out of range".into()));
    }
    verify_refutation(&r.flag.level_group(g, r.block)?, &r.witness)?;
    if g.evaluate(&r.witness.word)? != r.matrix {
        return Err(Error::InvalidCertificate("witness matrix does not match its word".into()));
    }
    Ok(())
}

/// Block upper-triangular representation with monomial diagonal blocks through
/// which the group factors.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMonomialLift {
    pub generators: Vec<Matrix>,
    /// `Ψ` with `Ψ ĝ = g Ψ`; column `(a, x)` is `A_a b_x`.
    pub epimorphism: Matrix,
    /// Sizes of the diagonal blocks, in order.
    pub level_dims: Vec<usize>,
    /// Flag-adapted basis `b` of the original space, as columns.
    pub adapted_basis: Matrix,
    /// Lifted index of `b_x` in the identity coset, for each `x`.
    pub base_positions: Vec<usize>,
}

/// Index of basis vector `x` of coset `a` in the lifted space.
fn lifted_index(levels: &[(usize, usize)], x_level: usize, x_local: usize, a: usize, n: usize) -> usize {
    let (off, q) = levels[x_level];
    off * n + a * q + x_local
}

pub fn block_monomial_lift(g: &GroupInput, cert: &SpectrumCertificate) -> Result<BlockMonomialLift> {
    let f = g.field();
    let d = g.dim();
    let kflag = &cert.flag;
    let n = cert.coset_reps.len();
    let mut basis: Vec<Vector> = Vec::with_capacity(d);
    let mut level_of: Vec<(usize, usize)> = Vec::with_capacity(d);
    let mut levels: Vec<(usize, usize)> = Vec::new();
    for (i, w) in kflag.flag.windows(2).enumerate() {
        let s = w[0].in_coordinates_of(&w[1]).ok_or(Error::NotInvariant)?;
        levels.push((basis.len(), w[1].dim() - w[0].dim()));
        let mut local = 0;
        for piece in cert.per_block[i].decomposition.pieces() {
            for x in piece.basis_vectors() {
                basis.push(lift_quotient_vector(&x, &s, &w[1]));
                level_of.push((i, local));
                local += 1;
            }
        }
    }
    if basis.len() != d {
        return Err(Error::InvalidCertificate("block decompositions do not span".into()));
    }
    let b = Matrix::from_cols(f, &basis, d);
    let binv = b.inverse()?;
    let big = d * n;
    let mut psi_cols: Vec<Vector> = vec![Vec::new(); big];
    for (a, (_, r)) in cert.coset_reps.iter().enumerate() {
        for (x, bx) in basis.iter().enumerate() {
            let (lv, loc) = level_of[x];
            psi_cols[lifted_index(&levels, lv, loc, a, n)] = r.mul_vec(bx);
        }
    }
    let epimorphism = Matrix::from_cols(f, &psi_cols, d);
    let inv_reps: Vec<Matrix> = cert.coset_reps.iter().map(|(_, r)| r.inverse()).collect::<Result<_>>()?;
    let mut generators = Vec::with_capacity(g.generators().len());
    for (gen, row) in g.generators().iter().zip(&cert.coset_table) {
        let mut m = Matrix::zeros(f, big, big);
        for (a, (_, r)) in cert.coset_reps.iter().enumerate() {
            let t = row[a];
            let h = binv.mul(&inv_reps[t].mul(&gen.mul(r))).mul(&b);
            for y in 0..d {
                let (ly, py) = level_of[y];
                for x in 0..d {
                    let c = h.get(x, y);
                    if c.is_zero() {
                        continue;
                    }
                    let (lx, px) = level_of[x];
                    if lx > ly || (lx == ly && px != py) {
                        return Err(Error::InvalidCertificate("coset element is not block-diagonal on the flag".into()));
                    }
                    m.set(lifted_index(&levels, lx, px, t, n), lifted_index(&levels, ly, py, a, n), c.clone());
                }
            }
        }
        generators.push(m);
    }
    let level_dims = levels.iter().map(|&(_, q)| q * n).collect();
    let base_positions = level_of.iter().map(|&(lv, loc)| lifted_index(&levels, lv, loc, 0, n)).collect();
    Ok(BlockMonomialLift { generators, epimorphism, level_dims, adapted_basis: b, base_positions })
}

//! Finite-dimensional graded `g[t]`-modules given by exact action matrices of
//! the degree-0 and degree-1 Chevalley generators, and the linear algebra
//! built on them.

mod analysis;
mod cyclic;
mod ext;
mod hom;
mod serial;
mod simple;

pub use analysis::*;
pub use cyclic::*;
pub use ext::*;
pub use hom::*;
pub use serial::*;
pub use simple::*;

use crate::charring::{GradedCharacter, Window};
use crate::linalg::{is_zero_vec, DMat, Subspace, Q};
use crate::rootdata::{BasisKind, RootSystem, Weight};
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::rc::Rc;
use std::sync::Arc;

/// `(x, k)` stands for `x (x) t^k`; the leftmost letter is applied last.
pub type Word = Vec<(usize, u32)>;

pub type BlockKey = (i64, Weight);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Status {
    /// the module is exactly the object it was built as
    Certified,
    /// built inside a grade window without a completeness certificate
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub grade: i64,
    pub weight: Weight,
    pub dim: usize,
    pub offset: usize,
}

impl Block {
    pub fn key(&self) -> BlockKey {
        (self.grade, self.weight.clone())
    }
}

/// A graded linear operator stored per source block.
#[derive(Clone, Debug)]
pub struct Op {
    pub maps: Vec<Option<(usize, DMat)>>,
}

impl Op {
    pub fn zero(nblocks: usize) -> Self {
        Op { maps: vec![None; nblocks] }
    }

    /// `self o other`
    pub fn compose(&self, other: &Op) -> Op {
        let maps = other
            .maps
            .iter()
            .map(|m| {
                let (k, mb) = m.as_ref()?;
                let (t, ma) = self.maps[*k].as_ref()?;
                let p = ma.mul(mb);
                if p.is_zero() {
                    None
                } else {
                    Some((*t, p))
                }
            })
            .collect();
        Op { maps }
    }

    pub fn add_scaled(&self, other: &Op, c: &Q) -> Op {
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| match (a, b) {
                (None, None) => None,
                (Some(x), None) => Some(x.clone()),
                (None, Some((k, mb))) => Some((*k, mb.scale(c))),
                (Some((ka, ma)), Some((kb, mb))) => {
                    assert_eq!(ka, kb, "operators with different targets");
                    let s = ma.add(&mb.scale(c));
                    if s.is_zero() {
                        None
                    } else {
                        Some((*ka, s))
                    }
                }
            })
            .collect();
        Op { maps }
    }

    pub fn scale(&self, c: &Q) -> Op {
        Op::zero(self.maps.len()).add_scaled(self, c)
    }

    /// `[self, other]`
    pub fn commutator(&self, other: &Op) -> Op {
        self.compose(other).add_scaled(&other.compose(self), &-Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.as_ref().map_or(true, |(_, x)| x.is_zero()))
    }
}

/// Homogeneous vector: coordinates inside one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVec {
    pub block: usize,
    pub v: Vec<Q>,
}

#[derive(Clone)]
pub struct ExplicitModule {
    pub rs: Arc<RootSystem>,
    pub blocks: Vec<Block>,
    index: HashMap<BlockKey, usize>,
    /// generator `d * dim g + x` is `x (x) t^d`, `d` in `{0, 1}`
    pub ops: Vec<Op>,
    pub window: Window,
    pub status: Status,
    /// for cyclic modules: each basis vector as a word applied to the generator
    pub words: Option<Vec<Vec<Word>>>,
    pub label: String,
}

impl std::fmt::Debug for ExplicitModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExplicitModule({}, dim {})", self.label, self.dim())
    }
}

pub fn gen_id(rs: &RootSystem, x: usize, degree: u32) -> usize {
    degree as usize * rs.dim + x
}

/// `e_i`, `f_i` and `e_theta (x) t`; they generate `g[t]` as a Lie algebra.
pub fn min_generators(rs: &RootSystem) -> Vec<usize> {
    let mut g: Vec<usize> = (0..rs.rank).map(|i| rs.e(i)).collect();
    g.extend((0..rs.rank).map(|i| rs.f(i)));
    g.push(gen_id(rs, rs.e(rs.theta), 1));
    g
}

pub fn all_generators(rs: &RootSystem) -> Vec<usize> {
    (0..2 * rs.dim).collect()
}

impl ExplicitModule {
    /// Builds a module from basis labels and a sparse action on basis vectors.
    /// `action(gen, i)` lists the image of basis vector `i`.
    pub fn from_sparse<F>(
        rs: Arc<RootSystem>,
        labels: &[BlockKey],
        mut action: F,
        words: Option<Vec<Word>>,
        window: Window,
        status: Status,
        label: String,
    ) -> ExplicitModule
    where
        F: FnMut(usize, usize) -> Vec<(usize, Q)>,
    {
        let mut groups: BTreeMap<BlockKey, Vec<usize>> = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            groups.entry(l.clone()).or_default().push(i);
        }
        let mut blocks = Vec::new();
        let mut pos = vec![(0usize, 0usize); labels.len()];
        let mut offset = 0;
        for (b, (key, members)) in groups.iter().enumerate() {
            for (j, &i) in members.iter().enumerate() {
                pos[i] = (b, j);
            }
            blocks.push(Block { grade: key.0, weight: key.1.clone(), dim: members.len(), offset });
            offset += members.len();
        }
        let index: HashMap<BlockKey, usize> = blocks.iter().enumerate().map(|(i, b)| (b.key(), i)).collect();
        let ngen = 2 * rs.dim;
        let mut ops = Vec::with_capacity(ngen);
        for g in 0..ngen {
            let (x, d) = (g % rs.dim, (g / rs.dim) as i64);
            let mut maps = Vec::with_capacity(blocks.len());
            for (b, (_, members)) in groups.iter().enumerate() {
                let key = (blocks[b].grade + d, blocks[b].weight.add(&rs.basis_weight[x]));
                let Some(&t) = index.get(&key) else {
                    maps.push(None);
                    continue;
                };
                let mut m = DMat::zeros(blocks[t].dim, blocks[b].dim);
                let mut nz = false;
                for (j, &i) in members.iter().enumerate() {
                    for (tgt, c) in action(g, i) {
                        if c.is_zero() {
                            continue;
                        }
                        let (tb, tj) = pos[tgt];
                        assert_eq!(tb, t, "action does not respect weight and grade");
                        *m.at_mut(tj, j) += c;
                        nz = true;
                    }
                }
                maps.push(if nz && !m.is_zero() { Some((t, m)) } else { None });
            }
            ops.push(Op { maps });
        }
        let words = words.map(|w| {
            groups.values().map(|members| members.iter().map(|&i| w[i].clone()).collect()).collect()
        });
        ExplicitModule { rs, blocks, index, ops, window, status, words, label }
    }

    /// Assembles a module from blocks and per-generator block maps.
    pub fn from_blocks(
        rs: Arc<RootSystem>,
        keys: Vec<(BlockKey, usize)>,
        ops: Vec<Op>,
        words: Option<Vec<Vec<Word>>>,
        window: Window,
        status: Status,
        label: String,
    ) -> ExplicitModule {
        let mut blocks = Vec::with_capacity(keys.len());
        let mut offset = 0;
        for ((g, w), d) in keys {
            blocks.push(Block { grade: g, weight: w, dim: d, offset });
            offset += d;
        }
        for w in blocks.windows(2) {
            assert!(w[0].key() < w[1].key(), "blocks must be sorted and distinct");
        }
        let index = blocks.iter().enumerate().map(|(i, b)| (b.key(), i)).collect();
        ExplicitModule { rs, blocks, index, ops, window, status, words, label }
    }

    pub fn zero_module(rs: Arc<RootSystem>, window: Window) -> ExplicitModule {
        let ops = vec![Op::zero(0); 2 * rs.dim];
        ExplicitModule::from_blocks(rs, Vec::new(), ops, None, window, Status::Certified, "0".into())
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    pub fn block_index(&self, key: &BlockKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn block_dim(&self, grade: i64, weight: &Weight) -> usize {
        self.block_index(&(grade, weight.clone())).map_or(0, |b| self.blocks[b].dim)
    }

    pub fn grade_range(&self) -> Option<(i64, i64)> {
        let lo = self.blocks.iter().map(|b| b.grade).min()?;
        let hi = self.blocks.iter().map(|b| b.grade).max()?;
        Some((lo, hi))
    }

    pub fn character(&self) -> GradedCharacter {
        let mut c = GradedCharacter::zero(self.window);
        for b in &self.blocks {
            c.add_term(b.weight.clone(), b.grade, b.dim as i64);
        }
        c
    }

    pub fn unit(&self, block: usize, j: usize) -> HVec {
        let mut v = vec![Q::zero(); self.blocks[block].dim];
        v[j] = Q::one();
        HVec { block, v }
    }

    pub fn apply_op(op: &Op, v: &HVec) -> Option<HVec> {
        let (t, m) = op.maps[v.block].as_ref()?;
        let w = m.mul_vec(&v.v);
        if is_zero_vec(&w) {
            None
        } else {
            Some(HVec { block: *t, v: w })
        }
    }

    pub fn apply(&self, gen: usize, v: &HVec) -> Option<HVec> {
        Self::apply_op(&self.ops[gen], v)
    }

    pub fn op_cache(&self) -> OpCache<'_> {
        OpCache { m: self, cache: RefCell::new(HashMap::new()) }
    }

    /// Checks `[x (x) t^k, y (x) t^l] = [x, y] (x) t^(k+l)` for every pair of
    /// basis elements with `k + l <= max_degree`.
    pub fn check_brackets(&self, max_degree: u32) -> Result<()> {
        let rs = &self.rs;
        let cache = self.op_cache();
        for k in 0..=max_degree.min(1) {
            for l in k..=max_degree - k {
                for x in 0..rs.dim {
                    for y in 0..rs.dim {
                        let lhs = cache.get(x, k).commutator(&cache.get(y, l));
                        let mut rhs = Op::zero(self.blocks.len());
                        for &(z, c) in &rs.bracket[x][y] {
                            rhs = rhs.add_scaled(&cache.get(z, k + l), &Q::from_integer(c.into()));
                        }
                        if !lhs.add_scaled(&rhs, &-Q::one()).is_zero() {
                            return Err(Error::NotAModule(format!(
                                "{}: bracket of basis elements {x} (degree {k}) and {y} (degree {l}) fails",
                                self.label
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Smallest submodule containing `seeds`, as one subspace per block.
    pub fn closure<I: IntoIterator<Item = HVec>>(&self, seeds: I) -> Vec<Subspace> {
        let mut subs: Vec<Subspace> = self.blocks.iter().map(|b| Subspace::new(b.dim)).collect();
        self.close_into(&mut subs, seeds);
        subs
    }

    /// Enlarges `subs` to the submodule generated by it and `seeds`.
    pub fn close_into<I: IntoIterator<Item = HVec>>(&self, subs: &mut [Subspace], seeds: I) {
        let gens = min_generators(&self.rs);
        let mut queue = VecDeque::new();
        for s in seeds {
            if subs[s.block].insert(&s.v) {
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &g in &gens {
                if let Some(w) = self.apply(g, &v) {
                    if subs[w.block].insert(&w.v) {
                        queue.push_back(w);
                    }
                }
            }
        }
    }

    /// Closes an arbitrary family of block subspaces under the action.
    pub fn close_subspaces(&self, subs: &[Subspace]) -> Vec<Subspace> {
        let seeds: Vec<HVec> = subs
            .iter()
            .enumerate()
            .flat_map(|(b, s)| s.basis().iter().map(move |v| HVec { block: b, v: v.clone() }))
            .collect();
        self.closure(seeds)
    }

    pub fn empty_subspaces(&self) -> Vec<Subspace> {
        self.blocks.iter().map(|b| Subspace::new(b.dim)).collect()
    }

    pub fn full_subspaces(&self) -> Vec<Subspace> {
        self.blocks.iter().map(|b| Subspace::full(b.dim)).collect()
    }

    /// Largest submodule contained in the given block subspaces.
    pub fn greatest_invariant(&self, allowed: &[Subspace]) -> Vec<Subspace> {
        let gens = min_generators(&self.rs);
        let mut cur: Vec<Subspace> = allowed.to_vec();
        loop {
            let mut changed = false;
            for b in 0..self.blocks.len() {
                if cur[b].rank() == 0 {
                    continue;
                }
                let basis: Vec<Vec<Q>> = cur[b].basis().to_vec();
                let mut rows: Vec<Vec<Q>> = Vec::new();
                for &g in &gens {
                    let Some((t, m)) = self.ops[g].maps[b].as_ref() else { continue };
                    let residuals: Vec<Vec<Q>> = basis.iter().map(|u| cur[*t].reduce(&m.mul_vec(u))).collect();
                    for i in 0..self.blocks[*t].dim {
                        rows.push(residuals.iter().map(|r| r[i].clone()).collect());
                    }
                }
                if rows.is_empty() {
                    continue;
                }
                let kernel = DMat::from_rows(&rows).nullspace();
                if kernel.len() < basis.len() {
                    let vs: Vec<Vec<Q>> = kernel
                        .iter()
                        .map(|c| {
                            let mut v = vec![Q::zero(); self.blocks[b].dim];
                            for (ci, u) in c.iter().zip(&basis) {
                                crate::linalg::axpy(&mut v, ci, u);
                            }
                            v
                        })
                        .collect();
                    cur[b] = Subspace::from_vectors(self.blocks[b].dim, &vs);
                    changed = true;
                }
            }
            if !changed {
                return cur;
            }
        }
    }

    /// Quotient by a submodule given per block; words are inherited by the
    /// surviving basis vectors.
    pub fn quotient(&self, sub: &[Subspace], label: String) -> ExplicitModule {
        let free: Vec<Vec<usize>> = sub.iter().map(|s| s.free_coords()).collect();
        let keep: Vec<usize> = (0..self.blocks.len()).filter(|&b| !free[b].is_empty()).collect();
        let mut new_index = vec![usize::MAX; self.blocks.len()];
        for (i, &b) in keep.iter().enumerate() {
            new_index[b] = i;
        }
        let keys: Vec<(BlockKey, usize)> = keep.iter().map(|&b| (self.blocks[b].key(), free[b].len())).collect();
        let ops = self
            .ops
            .iter()
            .map(|op| {
                let maps = keep
                    .iter()
                    .map(|&b| {
                        let (t, m) = op.maps[b].as_ref()?;
                        if free[*t].is_empty() {
                            return None;
                        }
                        let cols: Vec<Vec<Q>> = free[b]
                            .iter()
                            .map(|&f| {
                                let r = sub[*t].reduce(&m.column(f));
                                free[*t].iter().map(|&i| r[i].clone()).collect()
                            })
                            .collect();
                        let nm = DMat::from_cols(free[*t].len(), &cols);
                        if nm.is_zero() {
                            None
                        } else {
                            Some((new_index[*t], nm))
                        }
                    })
                    .collect();
                Op { maps }
            })
            .collect();
        let words = self.words.as_ref().map(|w| {
            keep.iter().map(|&b| free[b].iter().map(|&f| w[b][f].clone()).collect()).collect()
        });
        ExplicitModule::from_blocks(self.rs.clone(), keys, ops, words, self.window, self.status, label)
    }

    /// The projection `M -> M / sub` matching [`ExplicitModule::quotient`].
    pub fn quotient_map(&self, sub: &[Subspace]) -> Morphism {
        let mut maps = BTreeMap::new();
        for (b, blk) in self.blocks.iter().enumerate() {
            let free = sub[b].free_coords();
            if free.is_empty() {
                continue;
            }
            let cols: Vec<Vec<Q>> = (0..blk.dim)
                .map(|j| {
                    let mut e = vec![Q::zero(); blk.dim];
                    e[j] = Q::one();
                    let r = sub[b].reduce(&e);
                    free.iter().map(|&i| r[i].clone()).collect()
                })
                .collect();
            maps.insert(blk.key(), DMat::from_cols(free.len(), &cols));
        }
        Morphism { maps }
    }

    /// The submodule spanned by `sub` with its echelon basis, and the inclusion.
    pub fn submodule(&self, sub: &[Subspace], label: String) -> (ExplicitModule, Morphism) {
        let keep: Vec<usize> = (0..self.blocks.len()).filter(|&b| sub[b].rank() > 0).collect();
        let mut new_index = vec![usize::MAX; self.blocks.len()];
        for (i, &b) in keep.iter().enumerate() {
            new_index[b] = i;
        }
        let keys: Vec<(BlockKey, usize)> = keep.iter().map(|&b| (self.blocks[b].key(), sub[b].rank())).collect();
        let ops = self
            .ops
            .iter()
            .map(|op| {
                let maps = keep
                    .iter()
                    .map(|&b| {
                        let (t, m) = op.maps[b].as_ref()?;
                        if sub[*t].rank() == 0 {
                            return None;
                        }
                        let cols: Vec<Vec<Q>> = sub[b]
                            .basis()
                            .iter()
                            .map(|u| {
                                let img = m.mul_vec(u);
                                debug_assert!(sub[*t].contains(&img), "subspace is not a submodule");
                                sub[*t].pivots().iter().map(|&p| img[p].clone()).collect()
                            })
                            .collect();
                        let nm = DMat::from_cols(sub[*t].rank(), &cols);
                        if nm.is_zero() {
                            None
                        } else {
                            Some((new_index[*t], nm))
                        }
                    })
                    .collect();
                Op { maps }
            })
            .collect();
        let m = ExplicitModule::from_blocks(self.rs.clone(), keys, ops, None, self.window, self.status, label);
        let mut maps = BTreeMap::new();
        for &b in &keep {
            maps.insert(self.blocks[b].key(), DMat::from_cols(self.blocks[b].dim, sub[b].basis()));
        }
        (m, Morphism { maps })
    }

    /// Subquotient `M_{>= lo} / M_{> hi}`.
    pub fn truncate(&self, window: Window) -> ExplicitModule {
        let keep: Vec<usize> = (0..self.blocks.len()).filter(|&b| window.contains(self.blocks[b].grade)).collect();
        let mut new_index = vec![usize::MAX; self.blocks.len()];
        for (i, &b) in keep.iter().enumerate() {
            new_index[b] = i;
        }
        let keys = keep.iter().map(|&b| (self.blocks[b].key(), self.blocks[b].dim)).collect();
        let ops = self
            .ops
            .iter()
            .map(|op| Op {
                maps: keep
                    .iter()
                    .map(|&b| {
                        let (t, m) = op.maps[b].as_ref()?;
                        (new_index[*t] != usize::MAX).then(|| (new_index[*t], m.clone()))
                    })
                    .collect(),
            })
            .collect();
        let lost_below = self.blocks.iter().any(|b| window.lo.map_or(false, |a| b.grade < a));
        let words = if lost_below {
            None
        } else {
            self.words.as_ref().map(|w| keep.iter().map(|&b| w[b].clone()).collect())
        };
        let window = self.window.intersect(&window);
        ExplicitModule::from_blocks(self.rs.clone(), keys, ops, words, window, self.status, self.label.clone())
    }

    /// Graded dual: `M*[-r] = M[r]*` with `x` acting by `-x^T`.
    pub fn dual(&self) -> ExplicitModule {
        let mut order: Vec<usize> = (0..self.blocks.len()).collect();
        let dkey = |b: &Block| (-b.grade, b.weight.neg());
        order.sort_by_key(|&b| dkey(&self.blocks[b]));
        let mut new_index = vec![0usize; self.blocks.len()];
        for (i, &b) in order.iter().enumerate() {
            new_index[b] = i;
        }
        let keys = order.iter().map(|&b| (dkey(&self.blocks[b]), self.blocks[b].dim)).collect();
        let ops = self
            .ops
            .iter()
            .map(|op| {
                let mut maps: Vec<Option<(usize, DMat)>> = vec![None; self.blocks.len()];
                for (b, m) in op.maps.iter().enumerate() {
                    if let Some((t, mat)) = m {
                        maps[new_index[*t]] = Some((new_index[b], mat.transpose().scale(&-Q::one())));
                    }
                }
                Op { maps }
            })
            .collect();
        let window = self.window.negate();
        ExplicitModule::from_blocks(self.rs.clone(), keys, ops, None, window, self.status, format!("({})*", self.label))
    }

    /// External direct sum, with the block offsets of each summand.
    pub fn direct_sum(parts: &[&ExplicitModule], label: String) -> ExplicitModule {
        let rs = parts[0].rs.clone();
        let mut keys: BTreeMap<BlockKey, usize> = BTreeMap::new();
        for p in parts {
            for b in &p.blocks {
                *keys.entry(b.key()).or_insert(0) += b.dim;
            }
        }
        let key_list: Vec<BlockKey> = keys.keys().cloned().collect();
        let kidx: HashMap<BlockKey, usize> = key_list.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        // position of each summand's block inside the sum block
        let mut shift: Vec<Vec<usize>> = Vec::new();
        let mut fill = vec![0usize; key_list.len()];
        for p in parts {
            let mut s = Vec::new();
            for b in &p.blocks {
                let i = kidx[&b.key()];
                s.push(fill[i]);
                fill[i] += b.dim;
            }
            shift.push(s);
        }
        let ngen = 2 * rs.dim;
        let mut ops = Vec::with_capacity(ngen);
        for g in 0..ngen {
            let mut maps: Vec<Option<(usize, DMat)>> = vec![None; key_list.len()];
            for (pi, p) in parts.iter().enumerate() {
                for (b, m) in p.ops[g].maps.iter().enumerate() {
                    let Some((t, mat)) = m else { continue };
                    let sb = kidx[&p.blocks[b].key()];
                    let st = kidx[&p.blocks[*t].key()];
                    let entry = maps[sb].get_or_insert_with(|| (st, DMat::zeros(keys[&key_list[st]], keys[&key_list[sb]])));
                    for i in 0..mat.rows {
                        for j in 0..mat.cols {
                            let v = mat.get(i, j);
                            if !v.is_zero() {
                                entry.1.set(shift[pi][*t] + i, shift[pi][b] + j, v.clone());
                            }
                        }
                    }
                }
            }
            ops.push(Op { maps });
        }
        let window = parts.iter().skip(1).fold(parts[0].window, |w, p| w.intersect(&p.window));
        let status = if parts.iter().all(|p| p.status == Status::Certified) { Status::Certified } else { Status::Truncated };
        let blocks = key_list.into_iter().map(|k| {
            let d = keys[&k];
            (k, d)
        });
        ExplicitModule::from_blocks(rs, blocks.collect(), ops, None, window, status, label)
    }

    /// Inclusion of summand `i` into [`ExplicitModule::direct_sum`] of `parts`.
    pub fn sum_inclusion(parts: &[&ExplicitModule], sum: &ExplicitModule, i: usize) -> Morphism {
        let mut maps = BTreeMap::new();
        for b in &parts[i].blocks {
            let key = b.key();
            let before: usize = parts[..i].iter().map(|p| p.block_dim(key.0, &key.1)).sum();
            let total = sum.block_dim(key.0, &key.1);
            let mut m = DMat::zeros(total, b.dim);
            for j in 0..b.dim {
                m.set(before + j, j, Q::one());
            }
            maps.insert(key, m);
        }
        Morphism { maps }
    }

    /// Vectors of block `b` killed by every `e_i`.
    pub fn highest_vectors(&self, b: usize) -> Vec<Vec<Q>> {
        let rs = &self.rs;
        let mut rows = Vec::new();
        for i in 0..rs.rank {
            if let Some((_, m)) = self.ops[rs.e(i)].maps[b].as_ref() {
                for r in 0..m.rows {
                    rows.push(m.row(r));
                }
            }
        }
        if rows.is_empty() {
            return Subspace::full(self.blocks[b].dim).basis().to_vec();
        }
        DMat::from_rows(&rows).nullspace()
    }

    /// `g[t]_+ M`, the submodule generated by the images of degree-one generators.
    pub fn positive_part(&self) -> Vec<Subspace> {
        let rs = &self.rs;
        let mut seeds = Vec::new();
        for x in 0..rs.dim {
            for m in self.ops[gen_id(rs, x, 1)].maps.iter() {
                if let Some((t, mat)) = m {
                    for j in 0..mat.cols {
                        seeds.push(HVec { block: *t, v: mat.column(j) });
                    }
                }
            }
        }
        self.closure(seeds)
    }

    /// Joint kernel of the degree-one generators, per block.
    pub fn socle_subspaces(&self) -> Vec<Subspace> {
        let rs = &self.rs;
        (0..self.blocks.len())
            .map(|b| {
                let mut rows = Vec::new();
                for x in 0..rs.dim {
                    if let Some((_, m)) = self.ops[gen_id(rs, x, 1)].maps[b].as_ref() {
                        for r in 0..m.rows {
                            rows.push(m.row(r));
                        }
                    }
                }
                if rows.is_empty() {
                    Subspace::full(self.blocks[b].dim)
                } else {
                    Subspace::from_vectors(self.blocks[b].dim, &DMat::from_rows(&rows).nullspace())
                }
            })
            .collect()
    }

    /// Applies a word through the derived operators.
    pub fn apply_word(&self, cache: &OpCache<'_>, word: &[(usize, u32)], v: &HVec) -> Option<HVec> {
        let mut cur = v.clone();
        for &(x, k) in word.iter().rev() {
            cur = Self::apply_op(&cache.get(x, k), &cur)?;
        }
        Some(cur)
    }
}

/// Memoized operators `x (x) t^k` for `k >= 2`, obtained from degree 0 and 1
/// by brackets.
pub struct OpCache<'a> {
    m: &'a ExplicitModule,
    cache: RefCell<HashMap<(usize, u32), Rc<Op>>>,
}

impl<'a> OpCache<'a> {
    pub fn get(&self, x: usize, k: u32) -> Rc<Op> {
        if let Some(o) = self.cache.borrow().get(&(x, k)) {
            return o.clone();
        }
        let rs = &self.m.rs;
        let op = if k <= 1 {
            self.m.ops[gen_id(rs, x, k)].clone()
        } else {
            match rs.kinds[x] {
                BasisKind::Pos(a) | BasisKind::Neg(a) => {
                    let w = &rs.pos_root_weights[a];
                    let i = w.0.iter().position(|&c| c != 0).expect("nonzero root");
                    let sign = if matches!(rs.kinds[x], BasisKind::Pos(_)) { 1 } else { -1 };
                    let c = Q::new((1).into(), (sign * w.0[i]).into());
                    self.get(rs.h(i), k - 1).commutator(&self.get(x, 1)).scale(&c)
                }
                BasisKind::Cartan(i) => {
                    let br = &rs.bracket[rs.e(i)][rs.f(i)];
                    assert_eq!(br, &vec![(rs.h(i), 1)], "Chevalley normalization [e_i, f_i] = h_i");
                    self.get(rs.e(i), k - 1).commutator(&self.get(rs.f(i), 1))
                }
            }
        };
        let op = Rc::new(op);
        self.cache.borrow_mut().insert((x, k), op.clone());
        op
    }
}

/// Degree-zero morphism stored per block key of the source.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Morphism {
    pub maps: BTreeMap<BlockKey, DMat>,
}

impl Morphism {
    pub fn apply(&self, src: &ExplicitModule, dst: &ExplicitModule, v: &HVec) -> Option<HVec> {
        let key = src.blocks[v.block].key();
        let m = self.maps.get(&key)?;
        let t = dst.block_index(&key)?;
        let w = m.mul_vec(&v.v);
        if is_zero_vec(&w) {
            None
        } else {
            Some(HVec { block: t, v: w })
        }
    }

    /// `self o other`
    pub fn compose(&self, other: &Morphism) -> Morphism {
        let mut maps = BTreeMap::new();
        for (k, m) in &other.maps {
            if let Some(a) = self.maps.get(k) {
                let p = a.mul(m);
                if !p.is_zero() {
                    maps.insert(k.clone(), p);
                }
            }
        }
        Morphism { maps }
    }

    pub fn add_scaled(&self, other: &Morphism, c: &Q) -> Morphism {
        let mut maps = self.maps.clone();
        for (k, m) in &other.maps {
            let s = match maps.get(k) {
                Some(a) => a.add(&m.scale(c)),
                None => m.scale(c),
            };
            maps.insert(k.clone(), s);
        }
        maps.retain(|_, m| !m.is_zero());
        Morphism { maps }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.values().all(|m| m.is_zero())
    }

    pub fn identity(m: &ExplicitModule) -> Morphism {
        Morphism { maps: m.blocks.iter().map(|b| (b.key(), DMat::identity(b.dim))).collect() }
    }

    /// Rank summed over blocks.
    pub fn rank(&self) -> usize {
        self.maps.values().map(|m| m.rank()).sum()
    }

    /// Injective on every block of `src`.
    pub fn is_injective(&self, src: &ExplicitModule) -> bool {
        src.blocks.iter().all(|b| self.maps.get(&b.key()).map_or(b.dim == 0, |m| m.rank() == b.dim))
    }

    /// Surjective onto every block of `dst`.
    pub fn is_surjective(&self, dst: &ExplicitModule) -> bool {
        dst.blocks.iter().all(|b| self.maps.get(&b.key()).map_or(b.dim == 0, |m| m.rank() == b.dim))
    }

    /// Kernel of the morphism, per block of `src`.
    pub fn kernel(&self, src: &ExplicitModule) -> Vec<Subspace> {
        src.blocks
            .iter()
            .map(|b| match self.maps.get(&b.key()) {
                None => Subspace::full(b.dim),
                Some(m) => Subspace::from_vectors(b.dim, &m.nullspace()),
            })
            .collect()
    }

    /// Image of the morphism, per block of `dst`.
    pub fn image(&self, dst: &ExplicitModule) -> Vec<Subspace> {
        dst.blocks
            .iter()
            .map(|b| match self.maps.get(&b.key()) {
                None => Subspace::new(b.dim),
                Some(m) => Subspace::from_vectors(b.dim, &(0..m.cols).map(|j| m.column(j)).collect::<Vec<_>>()),
            })
            .collect()
    }

    /// Checks that the map intertwines every stored generator.
    pub fn is_homomorphism(&self, src: &ExplicitModule, dst: &ExplicitModule) -> bool {
        for g in 0..src.ops.len() {
            for (b, blk) in src.blocks.iter().enumerate() {
                let phi_b = self.maps.get(&blk.key());
                // phi_t X^src_b
                let lhs = match (&src.ops[g].maps[b], phi_b) {
                    (Some((t, x)), _) => self.maps.get(&src.blocks[*t].key()).map(|p| p.mul(x)),
                    _ => None,
                };
                // X^dst phi_b
                let rhs = phi_b.and_then(|p| {
                    let db = dst.block_index(&blk.key())?;
                    let (_, x) = dst.ops[g].maps[db].as_ref()?;
                    Some(x.mul(p))
                });
                let ok = match (lhs, rhs) {
                    (None, None) => true,
                    (Some(a), None) | (None, Some(a)) => a.is_zero(),
                    (Some(a), Some(b2)) => a == b2,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

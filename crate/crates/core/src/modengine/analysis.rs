//! Structure of explicit modules: endomorphism algebras, socles, the
//! o-canonical filtration, and direct summands isomorphic to cyclic modules.

use super::{gen_id, hom_graded, intersect, morphism_from_cyclic, ExplicitModule, HVec, Morphism};
use crate::charring::GradedCharacter;
use crate::linalg::{DMat, Subspace, Q};
use crate::rootdata::{BasisKind, Weight};
use crate::{Error, Result};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EndAnalysis {
    pub end_dim: usize,
    pub rad_dim: usize,
    pub indecomposable: bool,
}

fn trace(phi: &Morphism) -> Q {
    phi.maps.values().fold(Q::zero(), |s, m| s + m.trace())
}

/// `End(M)`, its radical as the kernel of the trace form, and
/// indecomposability as `dim End / rad = 1`.
pub fn end_algebra_analysis(m: &ExplicitModule) -> EndAnalysis {
    let ends = hom_graded(m, m);
    let n = ends.len();
    let mut form = DMat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = trace(&ends[i].compose(&ends[j]));
            form.set(i, j, t.clone());
            form.set(j, i, t);
        }
    }
    let rad_dim = n - form.rank();
    EndAnalysis { end_dim: n, rad_dim, indecomposable: n - rad_dim == 1 }
}

/// Every endomorphism is invertible or nilpotent (checked on a basis of
/// `End(M)` and on the pairwise sums of basis elements).
pub fn endomorphism_dichotomy(m: &ExplicitModule) -> bool {
    let ends = hom_graded(m, m);
    let dim = m.dim();
    let nilpotent = |phi: &Morphism| -> bool {
        let mut p = phi.clone();
        let mut steps = 1;
        while !p.is_zero() {
            if steps > dim {
                return false;
            }
            p = p.compose(phi);
            steps += 1;
        }
        true
    };
    let invertible = |phi: &Morphism| m.blocks.iter().all(|b| phi.maps.get(&b.key()).map_or(false, |x| x.rank() == b.dim));
    let mut cands: Vec<Morphism> = ends.clone();
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            cands.push(ends[i].add_scaled(&ends[j], &Q::from_integer(1.into())));
        }
    }
    cands.iter().all(|phi| invertible(phi) || nilpotent(phi))
}

/// Multiplicities of simples in the socle, the joint kernel of `g (x) t`.
pub fn socle_of(m: &ExplicitModule) -> Result<BTreeMap<(Weight, i64), i64>> {
    let subs = m.socle_subspaces();
    semisimple_multiplicities(m, &subs)
}

/// Simple multiplicities of a submodule on which `g[t]_+` acts by zero.
pub fn semisimple_multiplicities(m: &ExplicitModule, subs: &[Subspace]) -> Result<BTreeMap<(Weight, i64), i64>> {
    let mut per_grade: BTreeMap<i64, BTreeMap<Weight, i64>> = BTreeMap::new();
    for (b, blk) in m.blocks.iter().enumerate() {
        if subs[b].rank() > 0 {
            per_grade.entry(blk.grade).or_default().insert(blk.weight.clone(), subs[b].rank() as i64);
        }
    }
    let mut out = BTreeMap::new();
    for (g, ch) in per_grade {
        for (w, k) in m.rs.decompose(&ch)? {
            out.insert((w, g), k);
        }
    }
    Ok(out)
}

/// `M / g[t]_+ M` as simple multiplicities.
pub fn head_of(m: &ExplicitModule) -> Result<BTreeMap<(Weight, i64), i64>> {
    let rad = m.positive_part();
    let mut ch = GradedCharacter::zero(m.window);
    for (b, blk) in m.blocks.iter().enumerate() {
        ch.add_term(blk.weight.clone(), blk.grade, (blk.dim - rad[b].rank()) as i64);
    }
    crate::charring::simple_decompose(&m.rs, &ch)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationStep {
    pub index: usize,
    pub lambda: Weight,
    pub dim: usize,
    /// simple multiplicities of the socle of `M_s / M_(s-1)`
    pub quotient_socle: BTreeMap<String, i64>,
    pub condition_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OCanonical {
    pub steps: Vec<FiltrationStep>,
    pub holds: bool,
}

/// The chain `M_s`: largest submodules with weights in the union of the
/// hulls `conv W lambda_r`, `r <= s`, for the given enumeration.
pub fn o_canonical_subspaces(m: &ExplicitModule, enumeration: &[Weight]) -> Vec<Vec<Subspace>> {
    let rs = &m.rs;
    let mut out = Vec::with_capacity(enumeration.len());
    for s in 0..enumeration.len() {
        let allowed: Vec<Subspace> = m
            .blocks
            .iter()
            .map(|b| {
                if enumeration[..=s].iter().any(|l| rs.hull_membership(&b.weight, l)) {
                    Subspace::full(b.dim)
                } else {
                    Subspace::new(b.dim)
                }
            })
            .collect();
        out.push(m.greatest_invariant(&allowed));
    }
    out
}

/// The o-canonical filtration with the check that `M_s / M_(s-1)` has socle
/// supported on `lambda_s`.
pub fn o_canonical_filtration(m: &ExplicitModule, enumeration: &[Weight]) -> Result<OCanonical> {
    let chain = o_canonical_subspaces(m, enumeration);
    let total: usize = m.dim();
    if let Some(last) = chain.last() {
        if last.iter().map(|s| s.rank()).sum::<usize>() != total {
            return Err(Error::Internal("enumeration does not exhaust the weights of the module".into()));
        }
    }
    let mut steps = Vec::new();
    let mut holds = true;
    for s in 0..chain.len() {
        let (sub, _) = m.submodule(&chain[s], "M_s".into());
        let prev: Vec<Subspace> = if s == 0 {
            sub.empty_subspaces()
        } else {
            sub.blocks
                .iter()
                .map(|blk| {
                    let b = m.block_index(&blk.key()).unwrap();
                    let piv = chain[s][b].pivots().to_vec();
                    let vs: Vec<Vec<Q>> =
                        chain[s - 1][b].basis().iter().map(|u| piv.iter().map(|&p| u[p].clone()).collect()).collect();
                    Subspace::from_vectors(blk.dim, &vs)
                })
                .collect()
        };
        let quot = sub.quotient(&prev, "M_s/M_(s-1)".into());
        let socle = socle_of(&quot)?;
        let ok = socle.keys().all(|(w, _)| *w == enumeration[s]);
        holds &= ok;
        steps.push(FiltrationStep {
            index: s,
            lambda: enumeration[s].clone(),
            dim: chain[s].iter().map(|x| x.rank()).sum(),
            quotient_socle: socle.into_iter().map(|((w, g), k)| (format!("({w},{g})"), k)).collect(),
            condition_holds: ok,
        });
    }
    Ok(OCanonical { steps, holds })
}

/// Vectors `v` in `M_mu[p]` killed by `n^+[t]` and by `h (x) t^s`, `s >= 1`:
/// the images of the generator under `Hom(Delta(mu, p), M)`.
pub fn delta_hom_vectors(m: &ExplicitModule, mu: &Weight, p: i64) -> Vec<Vec<Q>> {
    let Some(b) = m.block_index(&(p, mu.clone())) else { return Vec::new() };
    let rs = &m.rs;
    let cache = m.op_cache();
    let span = m.grade_range().map_or(0, |(_, hi)| (hi - p).max(0)) as u32;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for x in 0..rs.dim {
        let kind = rs.kinds[x];
        for s in 0..=span {
            let wanted = match kind {
                BasisKind::Pos(_) => true,
                BasisKind::Cartan(_) => s >= 1,
                BasisKind::Neg(_) => false,
            };
            if !wanted {
                continue;
            }
            if let Some((_, mat)) = cache.get(x, s).maps[b].as_ref() {
                for r in 0..mat.rows {
                    rows.push(mat.row(r));
                }
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(m.blocks[b].dim).basis().to_vec();
    }
    DMat::from_rows(&rows).nullspace()
}

/// Vectors in `M_mu[p]` killed by `n^+[t]`: generator images of `W(mu, p)`.
pub fn global_weyl_hom_vectors(m: &ExplicitModule, mu: &Weight, p: i64) -> Vec<Vec<Q>> {
    let Some(b) = m.block_index(&(p, mu.clone())) else { return Vec::new() };
    let rs = &m.rs;
    let cache = m.op_cache();
    let span = m.grade_range().map_or(0, |(_, hi)| (hi - p).max(0)) as u32;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for x in 0..rs.dim {
        if !matches!(rs.kinds[x], BasisKind::Pos(_)) {
            continue;
        }
        for s in 0..=span {
            if let Some((_, mat)) = cache.get(x, s).maps[b].as_ref() {
                for r in 0..mat.rows {
                    rows.push(mat.row(r));
                }
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(m.blocks[b].dim).basis().to_vec();
    }
    DMat::from_rows(&rows).nullspace()
}

pub struct SplitResult {
    pub module: ExplicitModule,
    /// complement `-> M`
    pub incl: Morphism,
    pub d: usize,
}

/// Splits off the largest direct summand `Delta^d` (for `delta` cyclic with
/// generator `(mu, p)`) whose complement contains `keep`.
pub fn split_off_deltas(
    m: &ExplicitModule,
    delta: &ExplicitModule,
    mu: &Weight,
    p: i64,
    keep: Option<&[Subspace]>,
) -> Result<SplitResult> {
    let empty = m.empty_subspaces();
    let keep_sub = m.close_subspaces(keep.unwrap_or(&empty));
    let identity = SplitResult { module: m.clone(), incl: Morphism::identity(m), d: 0 };
    let vs = delta_hom_vectors(m, mu, p);
    if vs.is_empty() {
        return Ok(identity);
    }
    let b = m.block_index(&(p, mu.clone())).unwrap();
    let fs: Vec<Morphism> = vs.iter().map(|v| morphism_from_cyclic(delta, m, &HVec { block: b, v: v.clone() })).collect();
    // maps U -> Delta vanishing on keep
    let quot = m.quotient(&keep_sub, "U/keep".into());
    let qmap = m.quotient_map(&keep_sub);
    let hs: Vec<Morphism> = hom_graded(&quot, delta).into_iter().map(|h| h.compose(&qmap)).collect();
    if hs.is_empty() {
        return Ok(identity);
    }
    let top_key = (p, mu.clone());
    if delta.block_dim(p, mu) != 1 {
        return Err(Error::Internal("cyclic generator space is not one-dimensional".into()));
    }
    let mut pairing = DMat::zeros(fs.len(), hs.len());
    for (i, f) in fs.iter().enumerate() {
        for (j, h) in hs.iter().enumerate() {
            let c = h.compose(f);
            let val = c.maps.get(&top_key).map_or(Q::zero(), |x| x.get(0, 0).clone());
            pairing.set(i, j, val);
        }
    }
    let (_, pivots) = pairing.rref();
    let d = pivots.len();
    if d == 0 {
        return Ok(identity);
    }
    // complement: common kernel of the chosen h_j
    let mut comp: Vec<Subspace> = m.full_subspaces();
    for &j in &pivots {
        let ker = hs[j].kernel(m);
        comp = comp.iter().zip(&ker).map(|(a, k)| intersect(a, k)).collect();
    }
    let (module, incl) = m.submodule(&comp, m.label.clone());
    if module.dim() + d * delta.dim() != m.dim() {
        return Err(Error::Internal("summand splitting lost dimensions".into()));
    }
    Ok(SplitResult { module, incl, d })
}

/// Image of `N` under a morphism, as subspaces of the target.
pub fn image_subspaces(target: &ExplicitModule, phi: &Morphism) -> Vec<Subspace> {
    phi.image(target)
}

/// `dim Hom(Delta(mu, p), M)` without building `Delta`.
pub fn delta_hom_dim(m: &ExplicitModule, mu: &Weight, p: i64) -> usize {
    delta_hom_vectors(m, mu, p).len()
}

/// Joint kernel of all degree-one generators in one block.
pub fn degree_one_kernel(m: &ExplicitModule, b: usize) -> Vec<Vec<Q>> {
    let rs = &m.rs;
    let mut rows = Vec::new();
    for x in 0..rs.dim {
        if let Some((_, mat)) = m.ops[gen_id(rs, x, 1)].maps[b].as_ref() {
            for r in 0..mat.rows {
                rows.push(mat.row(r));
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(m.blocks[b].dim).basis().to_vec();
    }
    DMat::from_rows(&rows).nullspace()
}

/// Largest submodule whose simple constituents `(weight, grade)` all pass `allowed`.
pub fn largest_submodule_within<F>(m: &ExplicitModule, allowed: F) -> Vec<Subspace>
where
    F: Fn(&Weight, i64) -> bool,
{
    let mut cur = m.empty_subspaces();
    loop {
        let q = m.quotient(&cur, "M/X".into());
        let soc = q.socle_subspaces();
        let mut lifts = Vec::new();
        for (qb, blk) in q.blocks.iter().enumerate() {
            if soc[qb].rank() == 0 || !allowed(&blk.weight, blk.grade) {
                continue;
            }
            // highest vectors inside the socle: an intersection, not a basis filter
            let hv = Subspace::from_vectors(blk.dim, &q.highest_vectors(qb));
            let b = m.block_index(&blk.key()).unwrap();
            let free = cur[b].free_coords();
            for v in intersect(&hv, &soc[qb]).basis() {
                let mut full = vec![Q::zero(); m.blocks[b].dim];
                for (k, &f) in free.iter().enumerate() {
                    full[f] = v[k].clone();
                }
                lifts.push(HVec { block: b, v: full });
            }
        }
        let before: usize = cur.iter().map(|s| s.rank()).sum();
        m.close_into(&mut cur, lifts);
        if cur.iter().map(|s| s.rank()).sum::<usize>() == before {
            return cur;
        }
    }
}

/// Smallest submodule `K` such that every simple constituent of `M / K` passes `allowed`.
pub fn smallest_kernel_outside<F>(m: &ExplicitModule, allowed: F) -> Vec<Subspace>
where
    F: Fn(&Weight, i64) -> bool,
{
    let mut cur = m.empty_subspaces();
    loop {
        let q = m.quotient(&cur, "M/K".into());
        let mut lifts = Vec::new();
        for (qb, blk) in q.blocks.iter().enumerate() {
            if allowed(&blk.weight, blk.grade) {
                continue;
            }
            let b = m.block_index(&blk.key()).unwrap();
            let free = cur[b].free_coords();
            for v in q.highest_vectors(qb) {
                let mut full = vec![Q::zero(); m.blocks[b].dim];
                for (k, &f) in free.iter().enumerate() {
                    full[f] = v[k].clone();
                }
                lifts.push(HVec { block: b, v: full });
            }
        }
        if lifts.is_empty() {
            return cur;
        }
        m.close_into(&mut cur, lifts);
    }
}

/// Simple multiplicities of a module, read off its character.
pub fn composition_factors(m: &ExplicitModule) -> Result<BTreeMap<(Weight, i64), i64>> {
    crate::charring::simple_decompose(&m.rs, &m.character())
}

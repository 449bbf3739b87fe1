//! `Ext^1` through projective presentations `0 -> K -> P -> M -> 0` built
//! from truncated projectives, extensions by pushout, and universal
//! extensions.

use super::{
    build_projective, flatten, hom_graded, morphism_from_cyclic, ExplicitModule, HVec, Morphism, SimpleCache, Status,
};
use crate::linalg::{DMat, SparseSystem, Subspace, Q};
use crate::rootdata::Weight;
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A projective presentation of `M` inside grades `<= top`.
pub struct Presentation {
    pub module: ExplicitModule,
    pub top: i64,
    /// highest weight and grade of each projective summand
    pub tops: Vec<(Weight, i64)>,
    pub parts: Vec<ExplicitModule>,
    pub cover: ExplicitModule,
    /// `cover -> M`
    pub cover_map: Morphism,
    pub kernel: ExplicitModule,
    /// `K -> cover`
    pub kernel_incl: Morphism,
}

#[derive(Clone, Debug)]
pub struct ExtResult {
    pub dim: usize,
    /// representatives `K -> N` of a basis of `Ext^1(M, N)`
    pub cocycles: Vec<Morphism>,
}

impl Presentation {
    /// Generators of `M` are highest weight vectors independent modulo
    /// `g[t]_+ M`; each one gets a projective summand `P(mu, s)` truncated at `top`.
    pub fn new(m: &ExplicitModule, top: i64, simples: &mut SimpleCache) -> Result<Presentation> {
        let rs = m.rs.clone();
        if let Some((_, hi)) = m.grade_range() {
            if hi > top {
                return Err(Error::BadTruncation(format!("module reaches grade {hi} above the presentation top {top}")));
            }
        }
        let radical = m.positive_part();
        let mut gens: Vec<HVec> = Vec::new();
        let mut tops = Vec::new();
        for (b, blk) in m.blocks.iter().enumerate() {
            if !blk.weight.is_dominant() {
                continue;
            }
            let mut span = radical[b].clone();
            for v in m.highest_vectors(b) {
                if span.insert(&v) {
                    gens.push(HVec { block: b, v });
                    tops.push((blk.weight.clone(), blk.grade));
                }
            }
        }
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        for (g, (mu, s)) in gens.iter().zip(&tops) {
            let v = simples.get(&rs, mu)?;
            let p = build_projective(&rs, &v, *s, top);
            maps.push(morphism_from_cyclic(&p, m, g));
            parts.push(p);
        }
        let refs: Vec<&ExplicitModule> = parts.iter().collect();
        let cover = if refs.is_empty() {
            ExplicitModule::zero_module(rs.clone(), m.window)
        } else {
            ExplicitModule::direct_sum(&refs, format!("cover of {}", m.label))
        };
        let mut cover_map = Morphism::default();
        for blk in &cover.blocks {
            let key = blk.key();
            let md = m.block_dim(key.0, &key.1);
            if md == 0 {
                continue;
            }
            let mut cols = Vec::with_capacity(blk.dim);
            for (p, f) in parts.iter().zip(&maps) {
                let pd = p.block_dim(key.0, &key.1);
                match f.maps.get(&key) {
                    Some(mat) => cols.extend((0..pd).map(|j| mat.column(j))),
                    None => cols.extend((0..pd).map(|_| vec![Q::zero(); md])),
                }
            }
            cover_map.maps.insert(key, DMat::from_cols(md, &cols));
        }
        if !cover_map.is_surjective(m) {
            return Err(Error::Internal(format!("presentation of {} is not surjective", m.label)));
        }
        let ker = cover_map.kernel(&cover);
        let (kernel, kernel_incl) = cover.submodule(&ker, format!("kernel for {}", m.label));
        Ok(Presentation { module: m.clone(), top, tops, parts, cover, cover_map, kernel, kernel_incl })
    }

    /// Restrictions to `K` of the morphisms `P -> N`.
    fn restrictions(&self, n: &ExplicitModule) -> Vec<Morphism> {
        let mut out = Vec::new();
        let refs: Vec<&ExplicitModule> = self.parts.iter().collect();
        for (j, (mu, s)) in self.tops.iter().enumerate() {
            let Some(b) = n.block_index(&(*s, mu.clone())) else { continue };
            for v in n.highest_vectors(b) {
                let psi = morphism_from_cyclic(&self.parts[j], n, &HVec { block: b, v });
                // extend by zero to the cover through the summand projection
                let mut on_cover = Morphism::default();
                for blk in &self.cover.blocks {
                    let key = blk.key();
                    let Some(mat) = psi.maps.get(&key) else { continue };
                    let before: usize = refs[..j].iter().map(|p| p.block_dim(key.0, &key.1)).sum();
                    let mut full = DMat::zeros(mat.rows, blk.dim);
                    for r in 0..mat.rows {
                        for c in 0..mat.cols {
                            full.set(r, before + c, mat.get(r, c).clone());
                        }
                    }
                    on_cover.maps.insert(key, full);
                }
                out.push(on_cover.compose(&self.kernel_incl));
            }
        }
        out
    }

    /// `Ext^1(M, N) = Hom(K, N) / (restrictions of Hom(P, N))`.
    pub fn ext1(&self, n: &ExplicitModule) -> ExtResult {
        if let Some((_, hi)) = n.grade_range() {
            assert!(hi <= self.top, "target module reaches above the presentation window");
        }
        let k = &self.kernel;
        let homs = hom_graded(k, n);
        if homs.is_empty() {
            return ExtResult { dim: 0, cocycles: Vec::new() };
        }
        let flat_dim = flatten(k, n, &homs[0]).len();
        let mut span = Subspace::new(flat_dim);
        for r in self.restrictions(n) {
            span.insert(&flatten(k, n, &r));
        }
        let mut cocycles = Vec::new();
        for h in homs {
            if span.insert(&flatten(k, n, &h)) {
                cocycles.push(h);
            }
        }
        ExtResult { dim: cocycles.len(), cocycles }
    }
}

/// `Ext^1(M, N)` computed in grades up to the top of both modules.
pub fn ext1(m: &ExplicitModule, n: &ExplicitModule, simples: &mut SimpleCache) -> Result<ExtResult> {
    let top = match (m.grade_range(), n.grade_range()) {
        (None, _) | (_, None) => return Ok(ExtResult { dim: 0, cocycles: Vec::new() }),
        (Some((_, a)), Some((_, b))) => a.max(b),
    };
    Ok(Presentation::new(m, top, simples)?.ext1(n))
}

/// An extension `0 -> N -> E -> M^d -> 0` with `d` the number of classes.
pub struct Extension {
    pub module: ExplicitModule,
    /// `N -> E`
    pub incl: Morphism,
}

/// Pushout of `0 -> K -> P^d` along the cocycles `c_i: K -> N`.
pub fn extension_from_cocycles(pres: &Presentation, n: &ExplicitModule, cocycles: &[Morphism]) -> Extension {
    let d = cocycles.len();
    let mut parts: Vec<&ExplicitModule> = vec![&pres.cover; d];
    parts.push(n);
    let sum = ExplicitModule::direct_sum(&parts, "pushout".into());
    let n_incl = ExplicitModule::sum_inclusion(&parts, &sum, d);
    let mut seeds = Vec::new();
    let k = &pres.kernel;
    for (i, c) in cocycles.iter().enumerate() {
        let incl_i = ExplicitModule::sum_inclusion(&parts, &sum, i).compose(&pres.kernel_incl);
        let neg = n_incl.compose(c);
        let rel = incl_i.add_scaled(&neg, &-Q::one());
        for blk in &k.blocks {
            let Some(mat) = rel.maps.get(&blk.key()) else { continue };
            let sb = sum.block_index(&blk.key()).unwrap();
            for j in 0..blk.dim {
                let v = mat.column(j);
                if v.iter().any(|x| !x.is_zero()) {
                    seeds.push(HVec { block: sb, v });
                }
            }
        }
    }
    let sub = sum.closure(seeds);
    let mut e = sum.quotient(&sub, format!("extension of {} by {}", pres.module.label, n.label));
    e.status = if pres.module.status == Status::Certified && n.status == Status::Certified {
        Status::Certified
    } else {
        Status::Truncated
    };
    let q = sum.quotient_map(&sub);
    Extension { module: e, incl: q.compose(&n_incl) }
}

/// Does `0 -> N -> E` split, i.e. is there `r: E -> N` with `r o incl = id`?
pub fn is_split(e: &ExplicitModule, n: &ExplicitModule, incl: &Morphism) -> bool {
    let homs = hom_graded(e, n);
    let comps: Vec<Vec<Q>> = homs.iter().map(|r| flatten(n, n, &r.compose(incl))).collect();
    let target = flatten(n, n, &Morphism::identity(n));
    if target.is_empty() {
        return true;
    }
    let mut sys = SparseSystem::new(comps.len() + 1);
    for (row, t) in target.iter().enumerate() {
        let mut r: Vec<(usize, Q)> = comps.iter().enumerate().map(|(i, c)| (i, c[row].clone())).collect();
        r.push((comps.len(), -t.clone()));
        sys.add_row(r);
    }
    // a solution with last coordinate 1 exists iff it is free in the kernel
    sys.nullspace().iter().any(|v| !v[comps.len()].is_zero())
}

pub struct UniversalExtension {
    pub module: ExplicitModule,
    pub d: usize,
    /// `N -> U`
    pub incl: Morphism,
}

/// `0 -> N -> U -> M^d -> 0` with `Ext^1(M, U) = 0`. All classes are used
/// at once: the connecting map `Hom(M, M^d) -> Ext^1(M, N)` is then onto.
pub fn universal_extension(
    m: &ExplicitModule,
    n: &ExplicitModule,
    top: i64,
    simples: &mut SimpleCache,
) -> Result<UniversalExtension> {
    let pres = Presentation::new(m, top, simples)?;
    if pres.ext1(m).dim != 0 {
        return Err(Error::Internal(format!("Ext^1({0}, {0}) is nonzero", m.label)));
    }
    let bound = pres.ext1(n).dim;
    let mut u = n.clone();
    let mut incl = Morphism::identity(n);
    let mut d = 0usize;
    loop {
        let e = pres.ext1(&u);
        if e.dim == 0 {
            break;
        }
        if d + e.dim > bound {
            return Err(Error::Internal(format!("universal extension exceeded the bound {bound}")));
        }
        let ext = extension_from_cocycles(&pres, &u, &e.cocycles);
        incl = ext.incl.compose(&incl);
        u = ext.module;
        d += e.dim;
    }
    Ok(UniversalExtension { module: u, d, incl })
}

/// Grade of every block key present in a morphism, for diagnostics.
pub fn morphism_support(phi: &Morphism) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for ((g, _), m) in &phi.maps {
        *out.entry(*g).or_insert(0) += m.rank();
    }
    out
}

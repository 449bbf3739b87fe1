//! Degree-zero homomorphisms between explicit modules.

use super::{min_generators, ExplicitModule, HVec, Morphism};
use crate::linalg::{DMat, SparseSystem, Subspace, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Basis of `Hom(M, N)`: linear maps preserving weight and grade that
/// commute with a generating set of `g[t]`.
pub fn hom_graded(m: &ExplicitModule, n: &ExplicitModule) -> Vec<Morphism> {
    // unknown blocks: keys present in both modules
    let mut var_offset: Vec<Option<usize>> = vec![None; m.blocks.len()];
    let mut nvars = 0usize;
    for (b, blk) in m.blocks.iter().enumerate() {
        if let Some(nb) = n.block_index(&blk.key()) {
            var_offset[b] = Some(nvars);
            nvars += n.blocks[nb].dim * blk.dim;
        }
    }
    if nvars == 0 {
        return Vec::new();
    }
    let var = |b: usize, i: usize, j: usize| -> usize { var_offset[b].unwrap() + i * m.blocks[b].dim + j };
    let mut sys = SparseSystem::new(nvars);
    let gens = min_generators(&m.rs);
    let rs = &m.rs;
    for &g in &gens {
        let (x, d) = (g % rs.dim, (g / rs.dim) as i64);
        for (b, blk) in m.blocks.iter().enumerate() {
            let tkey = (blk.grade + d, blk.weight.add(&rs.basis_weight[x]));
            let Some(nt) = n.block_index(&tkey) else { continue };
            let ndim_t = n.blocks[nt].dim;
            // phi_t X^M_b
            let xm = m.ops[g].maps[b].as_ref().filter(|(t, _)| var_offset[*t].is_some());
            // X^N phi_b
            let xn = var_offset[b].and_then(|_| {
                let nb = n.block_index(&blk.key()).unwrap();
                n.ops[g].maps[nb].as_ref()
            });
            if xm.is_none() && xn.is_none() {
                continue;
            }
            for i in 0..ndim_t {
                for j in 0..blk.dim {
                    let mut row: Vec<(usize, Q)> = Vec::new();
                    if let Some((t, xmat)) = xm {
                        for l in 0..m.blocks[*t].dim {
                            let c = xmat.get(l, j);
                            if !c.is_zero() {
                                row.push((var(*t, i, l), c.clone()));
                            }
                        }
                    }
                    if let Some((_, xmat)) = xn {
                        for l in 0..xmat.cols {
                            let c = xmat.get(i, l);
                            if !c.is_zero() {
                                row.push((var(b, l, j), -c.clone()));
                            }
                        }
                    }
                    if !row.is_empty() {
                        sys.add_row(row);
                    }
                }
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|sol| {
            let mut maps = BTreeMap::new();
            for (b, blk) in m.blocks.iter().enumerate() {
                let Some(off) = var_offset[b] else { continue };
                let nd = n.block_dim(blk.grade, &blk.weight);
                let mut mat = DMat::zeros(nd, blk.dim);
                for i in 0..nd {
                    for j in 0..blk.dim {
                        mat.set(i, j, sol[off + i * blk.dim + j].clone());
                    }
                }
                if !mat.is_zero() {
                    maps.insert(blk.key(), mat);
                }
            }
            Morphism { maps }
        })
        .collect()
}

/// Flattens a morphism `M -> N` into coordinates over the common blocks.
pub fn flatten(m: &ExplicitModule, n: &ExplicitModule, phi: &Morphism) -> Vec<Q> {
    let mut out = Vec::new();
    for blk in &m.blocks {
        let nd = n.block_dim(blk.grade, &blk.weight);
        if nd == 0 {
            continue;
        }
        match phi.maps.get(&blk.key()) {
            Some(mat) => out.extend(mat.data.iter().cloned()),
            None => out.extend(std::iter::repeat(Q::zero()).take(nd * blk.dim)),
        }
    }
    out
}

/// The morphism from a cyclic module (with words) sending its generator to `v`.
/// The caller guarantees that `v` satisfies the defining relations.
pub fn morphism_from_cyclic(src: &ExplicitModule, dst: &ExplicitModule, v: &HVec) -> Morphism {
    let words = src.words.as_ref().expect("cyclic source module carries words");
    let cache = dst.op_cache();
    let mut maps = BTreeMap::new();
    for (b, blk) in src.blocks.iter().enumerate() {
        let Some(tb) = dst.block_index(&blk.key()) else { continue };
        let td = dst.blocks[tb].dim;
        let cols: Vec<Vec<Q>> = words[b]
            .iter()
            .map(|w| match dst.apply_word(&cache, w, v) {
                Some(h) => {
                    debug_assert_eq!(h.block, tb);
                    h.v
                }
                None => vec![Q::zero(); td],
            })
            .collect();
        let mat = DMat::from_cols(td, &cols);
        if !mat.is_zero() {
            maps.insert(blk.key(), mat);
        }
    }
    Morphism { maps }
}

/// Is the morphism invertible on every block (source and target alike)?
pub fn is_isomorphism(m: &ExplicitModule, n: &ExplicitModule, phi: &Morphism) -> bool {
    if m.character() != n.character() {
        return false;
    }
    m.blocks.iter().all(|b| phi.maps.get(&b.key()).map_or(false, |mat| mat.rows == mat.cols && mat.rank() == b.dim))
}

/// Isomorphism test for modules with local endomorphism rings: some composite
/// of basis morphisms `N -> M -> N` is invertible.
pub fn isomorphic_indecomposables(m: &ExplicitModule, n: &ExplicitModule) -> bool {
    if m.character() != n.character() {
        return false;
    }
    let fwd = hom_graded(m, n);
    if fwd.is_empty() {
        return false;
    }
    let back = hom_graded(n, m);
    for f in &fwd {
        for g in &back {
            if is_isomorphism(m, m, &g.compose(f)) {
                return true;
            }
        }
    }
    false
}

/// Intersection of two subspaces of the same ambient space.
pub fn intersect(a: &Subspace, b: &Subspace) -> Subspace {
    let dim = a.dim;
    if a.rank() == 0 || b.rank() == 0 {
        return Subspace::new(dim);
    }
    // x = sum c_i a_i with x in b: residuals of a_i modulo b combine to zero
    let residuals: Vec<Vec<Q>> = a.basis().iter().map(|u| b.reduce(u)).collect();
    let rows: Vec<Vec<Q>> = (0..dim).map(|k| residuals.iter().map(|r| r[k].clone()).collect()).collect();
    let kernel = DMat::from_rows(&rows).nullspace();
    let vs: Vec<Vec<Q>> = kernel
        .iter()
        .map(|c| {
            let mut v = vec![Q::zero(); dim];
            for (ci, u) in c.iter().zip(a.basis()) {
                crate::linalg::axpy(&mut v, ci, u);
            }
            v
        })
        .collect();
    Subspace::from_vectors(dim, &vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modengine::{build_cyclic, CyclicPresentation, Profile, SimpleModule};
    use crate::rootdata::{CartanType, RootSystem, Weight};

    #[test]
    fn schur_and_delta_quotient() {
        let rs = RootSystem::new(CartanType::A1);
        let v2 = SimpleModule::build(&rs, &Weight(vec![2])).unwrap();
        let v0 = SimpleModule::build(&rs, &Weight(vec![0])).unwrap();
        let s20 = v2.evaluation(rs.clone(), 0);
        let s01 = v0.evaluation(rs.clone(), 1);
        assert_eq!(hom_graded(&s20, &s20).len(), 1);
        assert_eq!(hom_graded(&s20, &s01).len(), 0);
        let pres = CyclicPresentation { profile: Profile::LocalWeyl, lambda: Weight(vec![2]), r: 0, top: None };
        let d = build_cyclic(&rs, &v2, &pres, 4).unwrap();
        assert_eq!(hom_graded(&d, &s20).len(), 1);
        assert_eq!(hom_graded(&s01, &d).len(), 1);
        assert_eq!(hom_graded(&d, &s01).len(), 0);
        for phi in hom_graded(&d, &d) {
            assert!(phi.is_homomorphism(&d, &d));
        }
    }
}

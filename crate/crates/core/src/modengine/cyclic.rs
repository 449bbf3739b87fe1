//! Cyclic modules built inside a grade window: the truncated projective
//! `P(lambda, r) = U(g[t]) (x)_{U(g)} V(lambda, r)` and its quotients by the
//! local and global Weyl relations.

use super::{ExplicitModule, HVec, SimpleModule, Status, Word};
use crate::charring::Window;
use crate::linalg::Q;
use crate::pbw::{Mono, PbwAlgebra, Poly};
use crate::rootdata::{BasisKind, RootSystem, Weight};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Profile {
    /// no relations beyond those of `P(lambda, r)`
    Proj,
    /// `n^+[t] w = 0`, `(h (x) t^s) w = 0` for `s > 0`
    LocalWeyl,
    /// `n^+[t] w = 0`
    GlobalWeyl,
}

impl Profile {
    pub fn symbol(&self) -> &'static str {
        match self {
            Profile::Proj => "P",
            Profile::LocalWeyl => "Delta",
            Profile::GlobalWeyl => "W",
        }
    }
}

/// Generator `(lambda, r)`, a relation profile and the top grade `b` of the
/// truncation `U(g[t])[p] w = 0` for `p > b - r` (`None`: no truncation).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicPresentation {
    pub profile: Profile,
    pub lambda: Weight,
    pub r: i64,
    pub top: Option<i64>,
}

/// `P(lambda, r)` truncated to grades `<= top`.
pub fn build_projective(rs: &Arc<RootSystem>, v: &SimpleModule, r: i64, top: i64) -> ExplicitModule {
    assert!(top >= r);
    let n = (top - r) as u32;
    let dim = rs.dim;
    let idx = |x: usize, k: u32| ((k - 1) as usize * dim + x) as u16;
    let letter = |i: u16| (i as usize % dim, i as u32 / dim as u32 + 1);
    let mut degree = Vec::new();
    for k in 1..=n {
        degree.extend(std::iter::repeat(k).take(dim));
    }
    let ndim = degree.len();
    let mut br = vec![vec![Vec::new(); ndim]; ndim];
    for a in 0..ndim {
        for b in 0..ndim {
            let (x, k) = letter(a as u16);
            let (y, l) = letter(b as u16);
            if k + l <= n {
                br[a][b] = rs.bracket[x][y].iter().map(|&(z, c)| (idx(z, k + l), c)).collect();
            }
        }
    }
    let mut alg = PbwAlgebra::new(degree, n, br);
    let monos = alg.monomials_up_to(n);
    let mono_index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let vd = v.dim();
    let mono_weight = |m: &Mono| -> Weight {
        m.iter().fold(Weight::zero(rs.rank), |w, &i| w.add(&rs.basis_weight[letter(i).0]))
    };
    let mut labels = Vec::with_capacity(monos.len() * vd);
    let mut words: Vec<Word> = Vec::with_capacity(monos.len() * vd);
    for m in &monos {
        let mw = mono_weight(m);
        let g = r + alg.mono_degree(m) as i64;
        let mword: Word = m.iter().map(|&i| letter(i)).collect();
        for b in 0..vd {
            labels.push((g, mw.add(&v.weights[b])));
            let mut w = mword.clone();
            w.extend(v.words[b].iter().cloned());
            words.push(w);
        }
    }
    let mut ad_cache: HashMap<(usize, Mono), Poly> = HashMap::new();
    let module = ExplicitModule::from_sparse(
        rs.clone(),
        &labels,
        |g, i| {
            let (mi, b) = (i / vd, i % vd);
            let m = &monos[mi];
            let mut out: Vec<(usize, Q)> = Vec::new();
            if g < dim {
                for (mm, c) in ad(&mut alg, &mut ad_cache, rs, n, g, m) {
                    out.push((mono_index[&mm] * vd + b, Q::from_integer(c.into())));
                }
                for (bb, c) in &v.action[g][b] {
                    out.push((mi * vd + bb, c.clone()));
                }
            } else if n >= 1 {
                let z = idx(g - dim, 1);
                for (mm, c) in alg.mul_elem(z, m).iter() {
                    out.push((mono_index[mm] * vd + b, Q::from_integer((*c).into())));
                }
            }
            out
        },
        Some(words),
        Window { lo: None, hi: Some(top) },
        Status::Certified,
        format!("P({},{})", v.lambda, r),
    );
    module
}

/// `ad_y(m)` for a PBW monomial `m` of `g (x) t C[t] / t^(n+1)`.
fn ad(alg: &mut PbwAlgebra, cache: &mut HashMap<(usize, Mono), Poly>, rs: &RootSystem, n: u32, y: usize, m: &[u16]) -> Poly {
    if m.is_empty() {
        return Vec::new();
    }
    let key = (y, m.to_vec());
    if let Some(p) = cache.get(&key) {
        return p.clone();
    }
    let dim = rs.dim;
    let head = m[0];
    let rest = &m[1..];
    let (x, k) = (head as usize % dim, head as u32 / dim as u32 + 1);
    let mut acc: BTreeMap<Mono, i64> = BTreeMap::new();
    // [y, x t^k] rest
    for &(z, c) in &rs.bracket[y][x] {
        let zi = ((k - 1) as usize * dim + z) as u16;
        for (mm, cc) in alg.mul_elem(zi, rest).iter() {
            *acc.entry(mm.clone()).or_insert(0) += c * cc;
        }
    }
    // (x t^k) ad_y(rest)
    let inner = ad(alg, cache, rs, n, y, rest);
    for (mm, cc) in alg.mul_elem_poly(head, &inner) {
        *acc.entry(mm).or_insert(0) += cc;
    }
    let out: Poly = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    cache.insert(key, out.clone());
    out
}

/// Index of the generator `1 (x) v_lambda` in a projective build.
pub fn generator_vector(m: &ExplicitModule, lambda: &Weight, r: i64) -> HVec {
    let b = m.block_index(&(r, lambda.clone())).expect("generator block");
    let words = m.words.as_ref().expect("cyclic module with words");
    let j = words[b].iter().position(|w| w.is_empty()).expect("generator word");
    m.unit(b, j)
}

/// Quotient of a projective build by the relations of `profile`.
pub fn impose_relations(p: &ExplicitModule, profile: Profile, lambda: &Weight, r: i64, top: i64) -> ExplicitModule {
    let rs = p.rs.clone();
    let label = format!("{}({},{})", profile.symbol(), lambda, r);
    if profile == Profile::Proj {
        let mut m = p.clone();
        m.label = label;
        return m;
    }
    let words = p.words.as_ref().expect("projective build carries words");
    let mut seeds = Vec::new();
    for k in 1..=(top - r) as u32 {
        for x in 0..rs.dim {
            let wanted = match rs.kinds[x] {
                BasisKind::Pos(_) => true,
                BasisKind::Cartan(_) => profile == Profile::LocalWeyl,
                BasisKind::Neg(_) => false,
            };
            if !wanted {
                continue;
            }
            let key = (r + k as i64, lambda.add(&rs.basis_weight[x]));
            let Some(b) = p.block_index(&key) else { continue };
            let j = words[b].iter().position(|w| w.as_slice() == [(x, k)]).expect("relation monomial");
            seeds.push(p.unit(b, j));
        }
    }
    let sub = p.closure(seeds);
    p.quotient(&sub, label)
}

/// Builds a cyclic module. With `top = Some(b)` the result is exactly the
/// truncated object; with `top = None` the window grows one grade at a time
/// until an empty grade slice certifies completeness, up to `max_span`.
pub fn build_cyclic(
    rs: &Arc<RootSystem>,
    v: &SimpleModule,
    pres: &CyclicPresentation,
    max_span: i64,
) -> Result<ExplicitModule> {
    let (lambda, r) = (&pres.lambda, pres.r);
    match pres.top {
        Some(b) => {
            if b < r {
                return Err(Error::BadTruncation(format!("generator grade {r} exceeds the top grade {b}")));
            }
            let p = build_projective(rs, v, r, b);
            let mut m = impose_relations(&p, pres.profile, lambda, r, b);
            m.window = Window { lo: None, hi: Some(b) };
            m.status = Status::Certified;
            Ok(m)
        }
        None => {
            if pres.profile != Profile::LocalWeyl && !(pres.profile == Profile::GlobalWeyl && lambda.is_zero()) {
                return Err(Error::Unsupported(format!(
                    "{}({lambda},{r}) is infinite-dimensional; give a finite top grade",
                    pres.profile.symbol()
                )));
            }
            let mut span = 1;
            loop {
                let top = r + span;
                let p = build_projective(rs, v, r, top);
                let mut m = impose_relations(&p, pres.profile, lambda, r, top);
                let empty = (r + 1..=top).find(|g| m.blocks.iter().all(|b| b.grade != *g));
                if let Some(g) = empty {
                    let mut t = m.truncate(Window { lo: None, hi: Some(g - 1) });
                    t.window = Window::ALL;
                    t.status = Status::Certified;
                    return Ok(t);
                }
                if span >= max_span {
                    m.status = Status::Truncated;
                    return Ok(m);
                }
                span += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanType;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn local_weyl_a1() {
        let rs = RootSystem::new(CartanType::A1);
        let v2 = SimpleModule::build(&rs, &w(&[2])).unwrap();
        let pres = CyclicPresentation { profile: Profile::LocalWeyl, lambda: w(&[2]), r: 0, top: None };
        let m = build_cyclic(&rs, &v2, &pres, 6).unwrap();
        assert_eq!(m.status, Status::Certified);
        assert_eq!(m.dim(), 4);
        let ch = m.character();
        assert_eq!(ch.get(&w(&[2]), 0), 1);
        assert_eq!(ch.get(&w(&[0]), 0), 1);
        assert_eq!(ch.get(&w(&[0]), 1), 1);
        assert_eq!(ch.get(&w(&[-2]), 0), 1);
        m.check_brackets(3).unwrap();
    }

    #[test]
    fn projective_brackets() {
        let rs = RootSystem::new(CartanType::A2);
        let v = SimpleModule::build(&rs, &w(&[1, 0])).unwrap();
        let p = build_projective(&rs, &v, 0, 2);
        // U(g[t]_+) in grades <= 2 has dimension 1 + 8 + 8 + 36
        assert_eq!(p.dim(), 53 * 3);
        p.check_brackets(2).unwrap();
    }
}

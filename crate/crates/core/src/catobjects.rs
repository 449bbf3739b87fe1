//! The named families of `G(Gamma)`: simples, truncated projectives and
//! injectives, local and global Weyl modules, costandard modules, and the
//! truncation functor `M -> M^Gamma`.

use crate::charring::{char_dual, u_plus_character, GradedCharacter, TruncationSpec, Window};
use crate::linalg::to_i64;
use crate::modengine::{
    build_cyclic, build_projective, composition_factors, head_of, largest_submodule_within, socle_of,
    CyclicPresentation, ExplicitModule, Morphism, Presentation, Profile, SimpleCache, Status,
};
use crate::orders::{lex_leq, LamPoint};
use crate::rootdata::{RootSystem, Weight};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    Simple,
    Proj,
    Inj,
    Delta,
    GlobalWeyl,
    Nabla,
}

impl FamilyKind {
    pub fn parse(s: &str) -> Result<FamilyKind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "simple" | "v" => Ok(FamilyKind::Simple),
            "proj" | "projective" | "p" => Ok(FamilyKind::Proj),
            "inj" | "injective" | "i" => Ok(FamilyKind::Inj),
            "delta" | "local-weyl" => Ok(FamilyKind::Delta),
            "global-weyl" | "weyl" | "w" => Ok(FamilyKind::GlobalWeyl),
            "nabla" | "costandard" => Ok(FamilyKind::Nabla),
            other => Err(Error::Unsupported(format!(
                "object {other:?}; expected simple, proj, inj, delta, global-weyl or nabla"
            ))),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            FamilyKind::Simple => "V",
            FamilyKind::Proj => "P",
            FamilyKind::Inj => "I",
            FamilyKind::Delta => "Delta",
            FamilyKind::GlobalWeyl => "W",
            FamilyKind::Nabla => "Nabla",
        }
    }
}

/// A family member `X(lambda, r)(Gamma)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyTag {
    pub kind: FamilyKind,
    pub lambda: Weight,
    pub r: i64,
    pub spec: TruncationSpec,
}

impl FamilyTag {
    pub fn new(kind: FamilyKind, lambda: Weight, r: i64, spec: TruncationSpec) -> Self {
        FamilyTag { kind, lambda, r, spec }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})({})", self.kind.symbol(), self.lambda, self.r, self.spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

impl Check {
    fn new(name: impl Into<String>, holds: bool) -> Self {
        Check { name: name.into(), holds }
    }
}

/// Builds and caches family members for one root system.
pub struct Catalog {
    pub rs: Arc<RootSystem>,
    pub simples: SimpleCache,
    /// grade span allowed to the auto-retry of untruncated local Weyl builds
    pub max_span: i64,
    cache: HashMap<FamilyTag, Arc<ExplicitModule>>,
    presentations: HashMap<(FamilyTag, i64), Arc<Presentation>>,
}

impl Catalog {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        Catalog { rs, simples: SimpleCache::default(), max_span: 8, cache: HashMap::new(), presentations: HashMap::new() }
    }

    fn check_membership(&self, tag: &FamilyTag) -> Result<()> {
        if tag.lambda.rank() != self.rs.rank {
            return Err(Error::Unsupported(format!("weight {} has the wrong rank", tag.lambda)));
        }
        if !tag.lambda.is_dominant() {
            return Err(Error::Unsupported(format!("{} is not dominant", tag.lambda)));
        }
        if !tag.spec.contains_grade(tag.r) {
            return Err(Error::BadTruncation(format!("grade {} lies outside {}", tag.r, tag.spec.window())));
        }
        Ok(())
    }

    /// `X(lambda, r)(Gamma)` as an explicit module.
    pub fn build(&mut self, tag: &FamilyTag) -> Result<Arc<ExplicitModule>> {
        if let Some(m) = self.cache.get(tag) {
            return Ok(m.clone());
        }
        self.check_membership(tag)?;
        let rs = self.rs.clone();
        let spec = &tag.spec;
        let label = tag.to_string();
        let mut m = match tag.kind {
            FamilyKind::Simple => self.simples.get(&rs, &tag.lambda)?.evaluation(rs.clone(), tag.r),
            FamilyKind::Proj => {
                let b = spec.b.ok_or_else(|| unbounded(tag, "above"))?;
                let v = self.simples.get(&rs, &tag.lambda)?;
                build_projective(&rs, &v, tag.r, b)
            }
            FamilyKind::Delta | FamilyKind::GlobalWeyl => {
                let profile = if tag.kind == FamilyKind::Delta { Profile::LocalWeyl } else { Profile::GlobalWeyl };
                if spec.b.is_none() && profile == Profile::GlobalWeyl && !tag.lambda.is_zero() {
                    return Err(unbounded(tag, "above"));
                }
                let v = self.simples.get(&rs, &tag.lambda)?;
                let pres = CyclicPresentation { profile, lambda: tag.lambda.clone(), r: tag.r, top: spec.b };
                let m = build_cyclic(&rs, &v, &pres, self.max_span)?;
                if m.status != Status::Certified {
                    return Err(Error::Uncertified(format!("{label}: no empty grade within span {}", self.max_span)));
                }
                m
            }
            FamilyKind::Nabla | FamilyKind::Inj => {
                if spec.a.is_none() {
                    return Err(unbounded(tag, "below"));
                }
                let kind = if tag.kind == FamilyKind::Nabla { FamilyKind::GlobalWeyl } else { FamilyKind::Proj };
                let dual_tag = FamilyTag::new(kind, rs.minus_w0(&tag.lambda), -tag.r, spec.reflected());
                self.build(&dual_tag)?.dual()
            }
        };
        m.window = m.window.intersect(&spec.window());
        m.label = label;
        let m = Arc::new(m);
        self.cache.insert(tag.clone(), m.clone());
        Ok(m)
    }

    /// Projective presentation of a family member inside grades `<= top`.
    pub fn presentation(&mut self, tag: &FamilyTag, top: i64) -> Result<Arc<Presentation>> {
        let key = (tag.clone(), top);
        if let Some(p) = self.presentations.get(&key) {
            return Ok(p.clone());
        }
        let m = self.build(tag)?;
        let p = Arc::new(Presentation::new(&m, top, &mut self.simples)?);
        self.presentations.insert(key, p.clone());
        Ok(p)
    }

    /// `dim Ext^1(X, N)` for a family member `X`.
    pub fn ext1_dim(&mut self, tag: &FamilyTag, target: &ExplicitModule) -> Result<usize> {
        let src = self.build(tag)?;
        let (Some((_, a)), Some((_, b))) = (src.grade_range(), target.grade_range()) else { return Ok(0) };
        let top = match tag.spec.b {
            Some(b_) => b_.max(a).max(b),
            None => a.max(b),
        };
        Ok(self.presentation(tag, top)?.ext1(target).dim)
    }

    /// Graded character of `X(lambda, r)(Gamma)`. With `cutoff`, objects that
    /// are infinite-dimensional over `Gamma` are returned on a finite window:
    /// grades `<= cutoff` for P and W, grades `>= cutoff` for I and Nabla.
    pub fn character(&mut self, tag: &FamilyTag, cutoff: Option<i64>) -> Result<GradedCharacter> {
        self.check_membership(tag)?;
        let spec = &tag.spec;
        let rs = self.rs.clone();
        match (tag.kind, cutoff) {
            (FamilyKind::Proj, Some(c)) if spec.b.is_none() => {
                let win = Window { lo: spec.a, hi: Some(c) };
                Ok(projective_character(&rs, &tag.lambda, tag.r, c).restrict(win))
            }
            (FamilyKind::GlobalWeyl, Some(c)) if spec.b.is_none() => {
                let capped = FamilyTag { spec: TruncationSpec { a: spec.a, b: Some(c), cap: spec.cap.clone() }, ..tag.clone() };
                let mut ch = self.build(&capped)?.character();
                ch.window = Window { lo: spec.a, hi: Some(c) };
                Ok(ch)
            }
            (FamilyKind::Nabla | FamilyKind::Inj, Some(c)) if spec.a.is_none() => {
                let kind = if tag.kind == FamilyKind::Nabla { FamilyKind::GlobalWeyl } else { FamilyKind::Proj };
                let dual_tag = FamilyTag::new(kind, rs.minus_w0(&tag.lambda), -tag.r, spec.reflected());
                let ch = self.character(&dual_tag, Some(-c))?;
                Ok(char_dual(&ch))
            }
            _ => Ok(self.build(tag)?.character()),
        }
    }

    /// The stated properties of a family member, re-derived from the module.
    pub fn verify(&mut self, tag: &FamilyTag) -> Result<Vec<Check>> {
        let m = self.build(tag)?;
        let rs = self.rs.clone();
        let (lambda, r) = (&tag.lambda, tag.r);
        let mut out = Vec::new();
        let span = m.grade_range().map_or(0, |(lo, hi)| (hi - lo) as u32);
        out.push(Check::new("bracket identities", m.check_brackets(span + 1).is_ok()));
        let top_slice = m.character().grade_slice(r);
        match tag.kind {
            FamilyKind::Proj | FamilyKind::Inj => {
                out.push(Check::new("M[r] = V(lambda)", top_slice == rs.weyl_character(lambda)));
            }
            FamilyKind::Simple => {
                let d = to_i64(&rs.weyl_dimension(lambda)).unwrap();
                out.push(Check::new("dimension of V(lambda)", m.dim() as i64 == d));
            }
            _ => {
                out.push(Check::new("dim M[r]_lambda = 1", m.block_dim(r, lambda) == 1));
                let inside = m.blocks.iter().all(|b| rs.hull_membership(&b.weight, lambda));
                out.push(Check::new("weights in conv W lambda", inside));
            }
        }
        let simple_top = BTreeMap::from([((lambda.clone(), r), 1)]);
        match tag.kind {
            FamilyKind::Proj | FamilyKind::Delta | FamilyKind::GlobalWeyl | FamilyKind::Simple => {
                out.push(Check::new("unique simple quotient V(lambda,r)", head_of(&m)? == simple_top));
            }
            _ => {}
        }
        match tag.kind {
            FamilyKind::Inj | FamilyKind::Nabla | FamilyKind::Simple => {
                out.push(Check::new("simple socle V(lambda,r)", socle_of(&m)? == simple_top));
            }
            _ => {}
        }
        if let (FamilyKind::GlobalWeyl, Some(b)) = (tag.kind, tag.spec.b) {
            let ok = m.grade_range().map_or(false, |(lo, hi)| {
                (lo..=hi).all(|s| (m.block_dim(s, lambda) != 0) == (r <= s && s <= b))
            });
            out.push(Check::new("W[s]_lambda != 0 iff r <= s <= b", ok));
        }
        if let (FamilyKind::Nabla, Some(a)) = (tag.kind, tag.spec.a) {
            let ok = m.grade_range().map_or(false, |(lo, hi)| {
                (lo..=hi).all(|s| (m.block_dim(s, lambda) != 0) == (a <= s && s <= r))
            });
            out.push(Check::new("Nabla[s]_lambda != 0 iff a <= s <= r", ok));
        }
        if matches!(tag.kind, FamilyKind::Delta | FamilyKind::Nabla) {
            let factors = composition_factors(&m)?;
            let below = factors.keys().all(|(mu, s)| below(&rs, mu, *s, lambda, r));
            out.push(Check::new("constituents (mu,s) <= (lambda,r)", below));
        }
        if tag.kind == FamilyKind::Nabla && tag.spec.is_finite() {
            // the largest submodule of I(lambda,r)(Gamma) with constituents <= (lambda,r)
            let inj = self.build(&FamilyTag { kind: FamilyKind::Inj, ..tag.clone() })?;
            let sub = largest_submodule_within(&inj, |mu, s| below(&rs, mu, s, lambda, r));
            let mut ch = GradedCharacter::zero(m.window);
            for (b, blk) in inj.blocks.iter().enumerate() {
                ch.add_term(blk.weight.clone(), blk.grade, sub[b].rank() as i64);
            }
            out.push(Check::new("largest submodule of I below (lambda,r)", ch == m.character()));
        }
        if let Some(cap) = &tag.spec.cap {
            let escapes = composition_factors(&m)?.keys().any(|(mu, _)| rs.height(mu) > rs.height(cap));
            out.push(Check::new("simple support inside the weight cap", !escapes));
        }
        Ok(out)
    }
}

fn unbounded(tag: &FamilyTag, side: &str) -> Error {
    Error::Unsupported(format!("{tag} is infinite-dimensional: J is unbounded {side}; give a cutoff"))
}

fn below(rs: &RootSystem, mu: &Weight, s: i64, lambda: &Weight, r: i64) -> bool {
    lex_leq(rs, &LamPoint::new(mu.clone(), s), &LamPoint::new(lambda.clone(), r))
}

/// `ch P(lambda, r)` in grades `<= top`, from the character of `U(g[t]_+)`.
pub fn projective_character(rs: &RootSystem, lambda: &Weight, r: i64, top: i64) -> GradedCharacter {
    let win = Window { lo: None, hi: Some(top) };
    if top < r {
        return GradedCharacter::zero(win);
    }
    let u = u_plus_character(rs, top - r).shift(r);
    let v = GradedCharacter::simple(rs, lambda, 0, Window::ALL);
    crate::charring::char_mul(&u, &v, win)
}

/// `M^Gamma = M_{>= a} / M_{> b}`.
pub fn truncate_module(m: &ExplicitModule, spec: &TruncationSpec) -> ExplicitModule {
    m.truncate(spec.window())
}

/// The morphism `M^Gamma -> N^Gamma` induced by `M -> N`.
pub fn truncate_morphism(phi: &Morphism, spec: &TruncationSpec) -> Morphism {
    let w = spec.window();
    Morphism { maps: phi.maps.iter().filter(|((g, _), _)| w.contains(*g)).map(|(k, v)| (k.clone(), v.clone())).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanType;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn small_objects_a1() {
        let rs = RootSystem::new(CartanType::A1);
        let mut cat = Catalog::new(rs.clone());
        let d = cat.build(&FamilyTag::new(FamilyKind::Delta, w(&[2]), 0, TruncationSpec::finite(0, 0))).unwrap();
        assert_eq!(d.dim(), 3);
        let gw = cat.build(&FamilyTag::new(FamilyKind::GlobalWeyl, w(&[1]), 0, TruncationSpec::finite(0, 1))).unwrap();
        assert_eq!(gw.dim(), 4);
        let n = cat.build(&FamilyTag::new(FamilyKind::Nabla, w(&[2]), 0, TruncationSpec::finite(0, 1))).unwrap();
        assert_eq!(n.character(), GradedCharacter::simple(&rs, &w(&[2]), 0, n.window));
        for kind in [FamilyKind::Simple, FamilyKind::Proj, FamilyKind::Inj, FamilyKind::Delta, FamilyKind::GlobalWeyl, FamilyKind::Nabla] {
            let tag = FamilyTag::new(kind, w(&[2]), 1, TruncationSpec::finite(0, 2));
            for c in cat.verify(&tag).unwrap() {
                assert!(c.holds, "{tag}: {}", c.name);
            }
        }
    }

    #[test]
    fn projective_character_matches_build() {
        let rs = RootSystem::new(CartanType::A2);
        let mut cat = Catalog::new(rs.clone());
        let tag = FamilyTag::new(FamilyKind::Proj, w(&[1, 0]), 0, TruncationSpec::finite(0, 2));
        let m = cat.build(&tag).unwrap();
        let mut ch = projective_character(&rs, &w(&[1, 0]), 0, 2);
        ch.window = m.window;
        assert_eq!(m.character(), ch);
    }
}

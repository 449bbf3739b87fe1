//! Graded characters: finitely supported elements of `Z[P][u, u^-1]` valid on
//! a grade window.

use crate::rootdata::{RootSystem, Weight, WeightChar};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Grade interval; `None` ends are infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Window {
    pub const ALL: Window = Window { lo: None, hi: None };

    pub fn finite(lo: i64, hi: i64) -> Self {
        Window { lo: Some(lo), hi: Some(hi) }
    }

    pub fn contains(&self, g: i64) -> bool {
        self.lo.map_or(true, |a| g >= a) && self.hi.map_or(true, |b| g <= b)
    }

    pub fn intersect(&self, o: &Window) -> Window {
        let lo = match (self.lo, o.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let hi = match (self.hi, o.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        Window { lo, hi }
    }

    pub fn negate(&self) -> Window {
        Window { lo: self.hi.map(|b| -b), hi: self.lo.map(|a| -a) }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.map_or("-inf".to_string(), |a| a.to_string());
        let hi = self.hi.map_or("+inf".to_string(), |b| b.to_string());
        write!(f, "{lo}:{hi}")
    }
}

/// The set `P' x J`: a grade interval and an optional weight cap. The cap
/// keeps the dominant weights whose height does not exceed that of the cap,
/// which is a saturated subset of `P^+`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub cap: Option<Weight>,
}

impl TruncationSpec {
    pub fn new(a: Option<i64>, b: Option<i64>) -> Result<Self> {
        if let (Some(x), Some(y)) = (a, b) {
            if x > y {
                return Err(Error::BadTruncation(format!("empty interval {x}:{y}")));
            }
        }
        Ok(TruncationSpec { a, b, cap: None })
    }

    pub fn finite(a: i64, b: i64) -> Self {
        Self::new(Some(a), Some(b)).expect("a <= b")
    }

    pub fn with_cap(mut self, cap: Weight) -> Self {
        self.cap = Some(cap);
        self
    }

    /// Parses `a:b` with `-inf` / `+inf` sentinels.
    pub fn parse(s: &str) -> Result<Self> {
        let (x, y) = s.split_once(':').ok_or_else(|| Error::BadTruncation(format!("expected a:b, got {s:?}")))?;
        let parse_end = |t: &str, inf: &str| -> Result<Option<i64>> {
            let t = t.trim();
            if t == inf || (inf == "+inf" && t == "inf") {
                Ok(None)
            } else {
                t.parse::<i64>().map(Some).map_err(|_| Error::BadTruncation(format!("bad interval end {t:?}")))
            }
        };
        Self::new(parse_end(x, "-inf")?, parse_end(y, "+inf")?)
    }

    pub fn window(&self) -> Window {
        Window { lo: self.a, hi: self.b }
    }

    pub fn contains_grade(&self, g: i64) -> bool {
        self.window().contains(g)
    }

    /// `P^+ x (-J)`
    pub fn reflected(&self) -> TruncationSpec {
        TruncationSpec { a: self.b.map(|x| -x), b: self.a.map(|x| -x), cap: self.cap.clone() }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_some() && self.b.is_some()
    }

    pub fn grades(&self) -> Result<Vec<i64>> {
        match (self.a, self.b) {
            (Some(a), Some(b)) => Ok((a..=b).collect()),
            _ => Err(Error::BadTruncation(format!("interval {} is not finite", self.window()))),
        }
    }

    pub fn admits_weight(&self, rs: &RootSystem, w: &Weight) -> bool {
        match &self.cap {
            None => true,
            Some(c) => w.is_dominant() && rs.height(w) <= rs.height(c),
        }
    }

    /// Dominant weights admitted by the cap, in enumeration order.
    pub fn cap_weights(&self, rs: &RootSystem) -> Result<Vec<Weight>> {
        let cap = self.cap.as_ref().ok_or_else(|| Error::BadTruncation("a weight cap is required".into()))?;
        Ok(dominant_up_to_height(rs, &rs.height(cap)))
    }
}

impl fmt::Display for TruncationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J={}", self.window())?;
        if let Some(c) = &self.cap {
            write!(f, ", cap={c}")?;
        }
        Ok(())
    }
}

/// Dominant weights of height at most `h`, in enumeration order.
pub fn dominant_up_to_height(rs: &RootSystem, h: &crate::linalg::Q) -> Vec<Weight> {
    let mut n = 4;
    loop {
        let list = rs.enumerate_dominant(n);
        if rs.height(list.last().unwrap()) > *h {
            return list.into_iter().filter(|w| rs.height(w) <= *h).collect();
        }
        n *= 2;
    }
}

/// Sort key of the dominant-weight enumeration.
pub fn enumeration_key(rs: &RootSystem, w: &Weight) -> (crate::linalg::Q, Weight) {
    (rs.height(w), w.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCharacter {
    pub terms: BTreeMap<(Weight, i64), i64>,
    pub window: Window,
}

impl GradedCharacter {
    pub fn zero(window: Window) -> Self {
        GradedCharacter { terms: BTreeMap::new(), window }
    }

    pub fn monomial(w: Weight, grade: i64, window: Window) -> Self {
        let mut c = Self::zero(window);
        c.add_term(w, grade, 1);
        c
    }

    /// `ch V(lambda)` placed in a single grade.
    pub fn from_weight_char(ch: &WeightChar, grade: i64, window: Window) -> Self {
        let mut c = Self::zero(window);
        for (w, m) in ch {
            c.add_term(w.clone(), grade, *m);
        }
        c
    }

    pub fn simple(rs: &RootSystem, lambda: &Weight, r: i64, window: Window) -> Self {
        Self::from_weight_char(&rs.weyl_character(lambda), r, window)
    }

    pub fn add_term(&mut self, w: Weight, grade: i64, m: i64) {
        if m == 0 || !self.window.contains(grade) {
            return;
        }
        let e = self.terms.entry((w.clone(), grade)).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&(w, grade));
        }
    }

    pub fn get(&self, w: &Weight, grade: i64) -> i64 {
        self.terms.get(&(w.clone(), grade)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_virtual(&self) -> bool {
        self.terms.values().any(|&m| m < 0)
    }

    pub fn dim(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn grades(&self) -> Vec<i64> {
        let mut g: Vec<i64> = self.terms.keys().map(|(_, s)| *s).collect();
        g.dedup();
        g.sort();
        g.dedup();
        g
    }

    pub fn grade_slice(&self, grade: i64) -> WeightChar {
        self.terms.iter().filter(|((_, s), _)| *s == grade).map(|((w, _), m)| (w.clone(), *m)).collect()
    }

    pub fn restrict(&self, window: Window) -> Self {
        let w = self.window.intersect(&window);
        GradedCharacter {
            terms: self.terms.iter().filter(|((_, s), _)| w.contains(*s)).map(|(k, v)| (k.clone(), *v)).collect(),
            window: w,
        }
    }

    pub fn add(&self, o: &GradedCharacter) -> Self {
        let mut c = GradedCharacter { terms: self.terms.clone(), window: self.window.intersect(&o.window) };
        c.terms.retain(|(_, s), _| c.window.contains(*s));
        for ((w, s), m) in &o.terms {
            c.add_term(w.clone(), *s, *m);
        }
        c
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut c = Self::zero(self.window);
        for ((w, s), m) in &self.terms {
            c.add_term(w.clone(), *s, m * k);
        }
        c
    }

    pub fn sub(&self, o: &GradedCharacter) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn shift(&self, by: i64) -> Self {
        let window = Window { lo: self.window.lo.map(|a| a + by), hi: self.window.hi.map(|b| b + by) };
        GradedCharacter { terms: self.terms.iter().map(|((w, s), m)| ((w.clone(), s + by), *m)).collect(), window }
    }

    pub fn to_record(&self) -> CharRecord {
        CharRecord {
            window: self.window,
            terms: self
                .terms
                .iter()
                .map(|((w, s), m)| TermRecord { weight: w.0.clone(), grade: *s, mult: *m })
                .collect(),
        }
    }

    pub fn from_record(r: &CharRecord) -> Self {
        let mut c = Self::zero(r.window);
        for t in &r.terms {
            c.add_term(Weight(t.weight.clone()), t.grade, t.mult);
        }
        c
    }
}

/// Serialized form of a graded character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharRecord {
    pub window: Window,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub weight: Vec<i64>,
    pub grade: i64,
    pub mult: i64,
}

/// Product truncated to `window`.
pub fn char_mul(x: &GradedCharacter, y: &GradedCharacter, window: Window) -> GradedCharacter {
    let mut out = GradedCharacter::zero(window);
    for ((wa, sa), ma) in &x.terms {
        for ((wb, sb), mb) in &y.terms {
            out.add_term(wa.add(wb), sa + sb, ma * mb);
        }
    }
    out
}

/// `(mu, r, m) -> (-mu, -r, m)`
pub fn char_dual(x: &GradedCharacter) -> GradedCharacter {
    let mut out = GradedCharacter::zero(x.window.negate());
    for ((w, s), m) in &x.terms {
        out.add_term(w.neg(), -s, *m);
    }
    out
}

/// Graded character of `U(g[t]_+)` in grades `0..=bound`.
pub fn u_plus_character(rs: &RootSystem, bound: i64) -> GradedCharacter {
    let window = Window::finite(0, bound);
    let mut acc = GradedCharacter::monomial(Weight::zero(rs.rank), 0, window);
    let adj = rs.adjoint_character();
    for k in 1..=bound {
        for (beta, mult) in &adj {
            for _ in 0..*mult {
                let mut series = GradedCharacter::zero(window);
                let mut n = 0;
                while n * k <= bound {
                    series.add_term(beta.scale(n), n * k, 1);
                    n += 1;
                }
                acc = char_mul(&acc, &series, window);
            }
        }
    }
    acc
}

/// Multiplicities `[x : V(lambda, r)]` by grade-wise highest-weight stripping.
pub fn simple_decompose(rs: &RootSystem, x: &GradedCharacter) -> Result<BTreeMap<(Weight, i64), i64>> {
    if x.is_virtual() {
        return Err(Error::NotAModule("virtual character".into()));
    }
    let mut out = BTreeMap::new();
    for g in x.grades() {
        let dec = rs.decompose(&x.grade_slice(g))?;
        for (w, m) in dec {
            if m < 0 {
                return Err(Error::NotAModule(format!("negative multiplicity at ({w}, {g})")));
            }
            out.insert((w, g), m);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Delta,
    Nabla,
    GlobalWeyl,
}

/// Multiplicities of `x` in a standard-type family, by triangular elimination
/// on leading terms. `provider(mu, s)` returns the family member's character.
pub fn filtration_multiplicities<F>(
    rs: &RootSystem,
    x: &GradedCharacter,
    family: Family,
    mut provider: F,
) -> Result<BTreeMap<(Weight, i64), i64>>
where
    F: FnMut(&Weight, i64) -> Result<GradedCharacter>,
{
    if x.is_virtual() {
        return Err(Error::NotAModule("virtual character".into()));
    }
    let mut rest = x.clone();
    let mut out = BTreeMap::new();
    let mut guard = 0usize;
    while !rest.is_zero() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Internal("filtration elimination did not terminate".into()));
        }
        let lead = rest
            .terms
            .keys()
            .filter(|(w, _)| w.is_dominant())
            .max_by(|(wa, sa), (wb, sb)| {
                let ka = enumeration_key(rs, wa);
                let kb = enumeration_key(rs, wb);
                ka.cmp(&kb).then_with(|| match family {
                    Family::Delta | Family::GlobalWeyl => sb.cmp(sa),
                    Family::Nabla => sa.cmp(sb),
                })
            })
            .cloned();
        let Some((mu, s)) = lead else {
            return Err(Error::NoFiltration("residual has no dominant leading term".into()));
        };
        let m = rest.get(&mu, s);
        if m < 0 {
            return Err(Error::NoFiltration(format!("negative multiplicity {m} at ({mu}, {s})")));
        }
        let member = provider(&mu, s)?;
        if member.get(&mu, s) != 1 {
            return Err(Error::Internal(format!("family member ({mu}, {s}) lacks its leading term")));
        }
        rest = rest.sub(&member.scale(m).restrict(rest.window));
        *out.entry((mu, s)).or_insert(0) += m;
    }
    Ok(out)
}

/// `sum m * ch(member)`, the inverse of [`filtration_multiplicities`].
pub fn combine<F>(mults: &BTreeMap<(Weight, i64), i64>, window: Window, mut provider: F) -> Result<GradedCharacter>
where
    F: FnMut(&Weight, i64) -> Result<GradedCharacter>,
{
    let mut acc = GradedCharacter::zero(window);
    for ((w, s), m) in mults {
        acc = acc.add(&provider(w, *s)?.scale(*m).restrict(window));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanType;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn monomial_product_and_unit() {
        let win = Window::finite(-5, 5);
        let x = GradedCharacter::monomial(w(&[1]), 0, win);
        let p = char_mul(&x, &x, win);
        assert_eq!(p, GradedCharacter::monomial(w(&[2]), 0, win));
        let one = GradedCharacter::monomial(w(&[0]), 0, win);
        assert_eq!(char_mul(&p, &one, win), p);
    }

    #[test]
    fn clebsch_gordan() {
        let rs = RootSystem::new(CartanType::A1);
        let win = Window::finite(0, 0);
        let v1 = GradedCharacter::simple(&rs, &w(&[1]), 0, win);
        let sq = char_mul(&v1, &v1, win);
        assert_eq!(sq.get(&w(&[2]), 0), 1);
        assert_eq!(sq.get(&w(&[0]), 0), 2);
        assert_eq!(sq.get(&w(&[-2]), 0), 1);
        let dec = simple_decompose(&rs, &sq).unwrap();
        assert_eq!(dec, [((w(&[2]), 0), 1), ((w(&[0]), 0), 1)].into_iter().collect());
    }

    #[test]
    fn duality() {
        let rs = RootSystem::new(CartanType::A2);
        let x = GradedCharacter::simple(&rs, &w(&[2, 1]), 3, Window::ALL);
        let d = char_dual(&x);
        assert_eq!(d, GradedCharacter::simple(&rs, &w(&[1, 2]), -3, Window::ALL));
        assert_eq!(char_dual(&d), x);
        let a1 = RootSystem::new(CartanType::A1);
        let s = GradedCharacter::simple(&a1, &w(&[2]), 1, Window::ALL);
        assert_eq!(char_dual(&s), GradedCharacter::simple(&a1, &w(&[2]), -1, Window::ALL));
    }

    #[test]
    fn u_plus_slices() {
        let rs = RootSystem::new(CartanType::A1);
        let u = u_plus_character(&rs, 3);
        let dims: Vec<i64> = (0..=3).map(|g| u.grade_slice(g).values().sum()).collect();
        // coefficients of prod_k (1 - q^k)^-3
        assert_eq!(dims, vec![1, 3, 9, 22]);
        assert_eq!(u.grade_slice(1), rs.adjoint_character());
    }

    #[test]
    fn simple_decompose_rejects_virtual() {
        let rs = RootSystem::new(CartanType::A1);
        let x = GradedCharacter::monomial(w(&[0]), 0, Window::ALL).scale(-1);
        assert!(simple_decompose(&rs, &x).is_err());
        let y = GradedCharacter::monomial(w(&[2]), 0, Window::ALL);
        assert!(simple_decompose(&rs, &y).is_err());
    }

    #[test]
    fn truncation_parse() {
        let t = TruncationSpec::parse("-inf:0").unwrap();
        assert_eq!((t.a, t.b), (None, Some(0)));
        let t = TruncationSpec::parse("0:+inf").unwrap();
        assert_eq!((t.a, t.b), (Some(0), None));
        assert!(TruncationSpec::parse("2:1").is_err());
        assert_eq!(TruncationSpec::parse("-2:1").unwrap().reflected(), TruncationSpec::finite(-1, 2));
    }
}

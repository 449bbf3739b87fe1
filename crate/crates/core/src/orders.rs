//! Partial orders on `Lambda = P^+ x Z`: the lexicographic order, the order
//! generated by coverings, and the face order attached to a subset `Psi`.

use crate::linalg::{q, DMat, Q};
use crate::rootdata::{RootSystem, Weight};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LamPoint {
    pub weight: Weight,
    pub grade: i64,
}

impl LamPoint {
    pub fn new(weight: Weight, grade: i64) -> Self {
        LamPoint { weight, grade }
    }
}

impl fmt::Display for LamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.weight, self.grade)
    }
}

/// `(mu, s) <= (lambda, r)`: `mu < lambda` in dominance, or `mu = lambda` and `s <= r`.
pub fn lex_leq(rs: &RootSystem, p: &LamPoint, q: &LamPoint) -> bool {
    rs.dominance_lt(&p.weight, &q.weight) || (p.weight == q.weight && p.grade <= q.grade)
}

/// Sums of exactly `k` elements of `steps`, for `k = 0..=depth`.
fn layers(start: &Weight, steps: &[Weight], depth: usize) -> Vec<BTreeSet<Weight>> {
    let mut out = vec![BTreeSet::from([start.clone()])];
    for _ in 0..depth {
        let next: BTreeSet<Weight> = out.last().unwrap().iter().flat_map(|w| steps.iter().map(move |s| w.add(s))).collect();
        out.push(next);
    }
    out
}

fn roots_and_zero(rs: &RootSystem) -> Vec<Weight> {
    let mut steps = vec![Weight::zero(rs.rank)];
    for w in &rs.pos_root_weights {
        steps.push(w.clone());
        steps.push(w.neg());
    }
    steps
}

/// The order generated by `(lambda, r) -> (mu, r + 1)` with `mu - lambda in R u {0}`.
/// Dominance is required of the two endpoints only.
pub fn covering_leq(rs: &RootSystem, p: &LamPoint, q: &LamPoint) -> bool {
    let k = q.grade - p.grade;
    if k < 0 || !p.weight.is_dominant() || !q.weight.is_dominant() {
        return false;
    }
    let diff = q.weight.sub(&p.weight);
    if !rs.in_root_lattice(&diff) {
        return false;
    }
    if diff.is_zero() {
        return true;
    }
    // 0 is a step, so layer k holds every sum of at most k roots
    let steps = roots_and_zero(rs);
    let mut layer = BTreeSet::from([Weight::zero(rs.rank)]);
    for _ in 0..k {
        layer = layer.iter().flat_map(|w| steps.iter().map(move |s| w.add(s))).collect();
        if layer.contains(&diff) {
            return true;
        }
    }
    false
}

/// A subset `Psi` of the weights of an ambient module `V`, given as a
/// weight multiset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiFace {
    pub ambient: Vec<(Weight, usize)>,
    pub psi: Vec<Weight>,
}

impl PsiFace {
    pub fn new(ambient: Vec<(Weight, usize)>, psi: Vec<Weight>) -> Result<PsiFace> {
        for w in &psi {
            if !ambient.iter().any(|(a, m)| a == w && *m > 0) {
                return Err(Error::Unsupported(format!("{w} is not a weight of the ambient module")));
            }
        }
        let mut psi = psi;
        psi.sort();
        psi.dedup();
        Ok(PsiFace { ambient, psi })
    }

    /// `V = g`: the roots with multiplicity one and `0` with multiplicity the rank.
    pub fn adjoint(rs: &RootSystem, psi: Vec<Weight>) -> Result<PsiFace> {
        let mut ambient = vec![(Weight::zero(rs.rank), rs.rank)];
        for w in &rs.pos_root_weights {
            ambient.push((w.clone(), 1));
            ambient.push((w.neg(), 1));
        }
        ambient.sort();
        PsiFace::new(ambient, psi)
    }

    pub fn distinct_weights(&self) -> Vec<Weight> {
        self.ambient.iter().filter(|(_, m)| *m > 0).map(|(w, _)| w.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiFaceReport {
    pub holds: bool,
    /// coefficient sums searched: `0..=bound`
    pub bound: usize,
    /// which displayed condition failed, with a witness weight
    pub failure: Option<(u8, Weight, usize, usize)>,
}

/// Both face conditions for all decompositions with coefficient sums up to
/// `B = max(4, 2 * rank * c)`, `c` the largest absolute coordinate of an
/// ambient weight.
pub fn psi_face_check(face: &PsiFace) -> PsiFaceReport {
    let all = face.distinct_weights();
    let rank = all.first().map_or(0, |w| w.rank());
    let c = all.iter().flat_map(|w| w.0.iter().map(|x| x.unsigned_abs() as usize)).max().unwrap_or(0);
    let bound = 4.max(2 * rank * c);
    psi_face_check_with_bound(face, bound)
}

pub fn psi_face_check_with_bound(face: &PsiFace, bound: usize) -> PsiFaceReport {
    let report = |failure: Option<(u8, Weight, usize, usize)>| PsiFaceReport { holds: failure.is_none(), bound, failure };
    if face.psi.is_empty() {
        return report(None);
    }
    let all = face.distinct_weights();
    let rank = all[0].rank();
    let zero = Weight::zero(rank);
    let outside: Vec<Weight> = all.iter().filter(|w| !face.psi.contains(w)).cloned().collect();
    let psi_layers = layers(&zero, &face.psi, bound);
    let v_layers = layers(&zero, &all, bound);
    // sums of k ambient weights using at least one weight outside Psi
    let mut mixed: Vec<BTreeSet<Weight>> = vec![BTreeSet::new()];
    for k in 1..=bound {
        let mut next: BTreeSet<Weight> = mixed[k - 1].iter().flat_map(|w| all.iter().map(move |s| w.add(s))).collect();
        for w in &v_layers[k - 1] {
            for s in &outside {
                next.insert(w.add(s));
            }
        }
        mixed.push(next);
    }
    for (k, lk) in psi_layers.iter().enumerate() {
        for (j, vj) in v_layers.iter().enumerate().take(k) {
            if let Some(w) = lk.intersection(vj).next() {
                return report(Some((1, w.clone(), k, j)));
            }
        }
    }
    for (k, lk) in psi_layers.iter().enumerate() {
        if let Some(w) = lk.intersection(&mixed[k]).next() {
            return report(Some((2, w.clone(), k, k)));
        }
    }
    report(None)
}

/// A linear form equal to `1` on every element of `Psi`, if one exists.
fn unit_form(face: &PsiFace) -> Option<Vec<Q>> {
    let rank = face.psi[0].rank();
    let mut rows: Vec<Vec<Q>> = face.psi.iter().map(|w| w.0.iter().map(|&x| q(x)).collect()).collect();
    for row in rows.iter_mut() {
        row.push(q(1));
    }
    let aug = DMat::from_rows(&rows);
    let (r, pivots) = aug.rref();
    if pivots.contains(&rank) {
        return None;
    }
    let mut f = vec![Q::zero(); rank];
    for (i, &p) in pivots.iter().enumerate() {
        f[p] = r.get(i, rank).clone();
    }
    Some(f)
}

/// `d_Psi(mu, lambda)`: the least `sum m_nu` with `lambda - mu = sum m_nu nu`,
/// or `None` when `lambda - mu` is not in `Z_+ Psi`.
pub fn psi_distance(mu: &Weight, lambda: &Weight, face: &PsiFace) -> Result<Option<usize>> {
    let diff = lambda.sub(mu);
    if face.psi.is_empty() {
        return Ok(diff.is_zero().then_some(0));
    }
    let f = unit_form(face)
        .ok_or_else(|| Error::Unsupported("Psi admits no linear form equal to 1 on it; not a face".into()))?;
    // every decomposition of diff has coefficient sum f(diff)
    let level: Q = f.iter().zip(&diff.0).map(|(a, &x)| a * q(x)).sum();
    if level.is_negative() || !level.is_integer() {
        return Ok(None);
    }
    let k = crate::linalg::to_i64(&level).unwrap() as usize;
    let zero = Weight::zero(diff.rank());
    let lk = layers(&zero, &face.psi, k);
    Ok(lk[k].contains(&diff).then_some(k))
}

/// `(lambda, r) <=_Psi (mu, s)`: `mu - lambda in Z_+ Psi` and `d_Psi(lambda, mu) = s - r`.
pub fn psi_leq(p: &LamPoint, q: &LamPoint, face: &PsiFace) -> Result<bool> {
    let gap = q.grade - p.grade;
    if gap < 0 {
        return Ok(false);
    }
    Ok(psi_distance(&p.weight, &q.weight, face)? == Some(gap as usize))
}

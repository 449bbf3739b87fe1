//! Finite-dimensional simple `g`-modules `V(lambda)` as quotients of a
//! truncated Verma module, and the evaluation modules `V(lambda, r)`.

use super::{ExplicitModule, Status, Word};
use crate::charring::Window;
use crate::linalg::{to_i64, Subspace, Q};
use crate::pbw::{Mono, PbwAlgebra};
use crate::rootdata::{BasisKind, RootSystem, Weight};
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

/// `V(lambda)` with an explicit basis of PBW monomials in the `f_alpha`.
#[derive(Clone, Debug)]
pub struct SimpleModule {
    pub lambda: Weight,
    pub weights: Vec<Weight>,
    /// basis vector `i` equals `words[i]` applied to the highest weight vector
    pub words: Vec<Word>,
    /// `action[x][i]`: image of basis vector `i` under the Chevalley basis element `x`
    pub action: Vec<Vec<Vec<(usize, Q)>>>,
}

impl SimpleModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn build(rs: &RootSystem, lambda: &Weight) -> Result<SimpleModule> {
        if !lambda.is_dominant() {
            return Err(Error::Unsupported(format!("{lambda} is not dominant")));
        }
        let npos = rs.num_pos();
        let depth = rs.height(&lambda.add(&rs.minus_w0(lambda)));
        let depth = to_i64(&depth).expect("lambda - w0 lambda lies in the root lattice") as u32;
        // PBW algebra of n^- on the f_alpha, graded by height
        let mut br = vec![vec![Vec::new(); npos]; npos];
        for a in 0..npos {
            for b in 0..npos {
                br[a][b] = rs.bracket[rs.f(a)][rs.f(b)]
                    .iter()
                    .map(|&(z, c)| match rs.kinds[z] {
                        BasisKind::Neg(g) => (g as u16, c),
                        _ => unreachable!("n^- is closed under brackets"),
                    })
                    .collect();
            }
        }
        let degree: Vec<u32> = rs.pos_roots.iter().map(|r| r.iter().sum::<i64>() as u32).collect();
        let mut alg = PbwAlgebra::new(degree, depth, br);
        let monos = alg.monomials_up_to(depth);
        let weight_of = |m: &Mono| -> Weight {
            m.iter().fold(lambda.clone(), |w, &a| w.sub(&rs.pos_root_weights[a as usize]))
        };
        // monomials grouped by weight
        let mut by_weight: BTreeMap<Weight, Vec<Mono>> = BTreeMap::new();
        for m in &monos {
            by_weight.entry(weight_of(m)).or_default().push(m.clone());
        }
        let local: HashMap<Mono, (Weight, usize)> = by_weight
            .iter()
            .flat_map(|(w, ms)| ms.iter().enumerate().map(move |(i, m)| (m.clone(), (w.clone(), i))))
            .collect();
        let to_vec = |p: &[(Mono, i64)], w: &Weight| -> Vec<Q> {
            let mut v = vec![Q::zero(); by_weight[w].len()];
            for (m, c) in p {
                let (mw, i) = &local[m];
                debug_assert_eq!(mw, w);
                v[*i] += Q::from_integer((*c).into());
            }
            v
        };
        // maximal submodule: f-closure of the singular vectors f_i^(lambda_i + 1) v
        let mut sub: BTreeMap<Weight, Subspace> =
            by_weight.iter().map(|(w, ms)| (w.clone(), Subspace::new(ms.len()))).collect();
        let mut queue: VecDeque<(Weight, Vec<(Mono, i64)>)> = VecDeque::new();
        for i in 0..rs.rank {
            let m: Mono = vec![i as u16; (lambda.0[i] + 1) as usize];
            if alg.mono_degree(&m) <= depth {
                queue.push_back((weight_of(&m), vec![(m, 1)]));
            }
        }
        while let Some((w, p)) = queue.pop_front() {
            let v = to_vec(&p, &w);
            if !sub.get_mut(&w).unwrap().insert(&v) {
                continue;
            }
            for a in 0..npos {
                let q = alg.mul_elem_poly(a as u16, &p);
                if !q.is_empty() {
                    queue.push_back((w.sub(&rs.pos_root_weights[a]), q));
                }
            }
        }
        // quotient basis: non-pivot monomials
        let mut weights = Vec::new();
        let mut words = Vec::new();
        let mut basis_index: HashMap<(Weight, usize), usize> = HashMap::new();
        let mut free_of: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (w, ms) in &by_weight {
            let free = sub[w].free_coords();
            for &i in &free {
                basis_index.insert((w.clone(), i), weights.len());
                weights.push(w.clone());
                words.push(ms[i].iter().map(|&a| (rs.f(a as usize), 0u32)).collect());
            }
            free_of.insert(w.clone(), free);
        }
        let expected = to_i64(&rs.weyl_dimension(lambda)).unwrap() as usize;
        if weights.len() != expected {
            return Err(Error::Internal(format!(
                "V({lambda}) built with dimension {} instead of {expected}",
                weights.len()
            )));
        }
        // action of every basis element of g on the Verma vectors, then reduced
        let mut verma = VermaAction { rs, alg: &mut alg, lambda };
        let mut action = vec![Vec::with_capacity(weights.len()); rs.dim];
        for (w, ms) in &by_weight {
            for &i in &free_of[w] {
                let m = &ms[i];
                for x in 0..rs.dim {
                    let p = verma.act(x, m);
                    let tw = w.add(&rs.basis_weight[x]);
                    let img = if p.is_empty() || !by_weight.contains_key(&tw) {
                        Vec::new()
                    } else {
                        let r = sub[&tw].reduce(&to_vec(&p, &tw));
                        free_of[&tw]
                            .iter()
                            .filter(|&&f| !r[f].is_zero())
                            .map(|&f| (basis_index[&(tw.clone(), f)], r[f].clone()))
                            .collect()
                    };
                    action[x].push(img);
                }
            }
        }
        Ok(SimpleModule { lambda: lambda.clone(), weights, words, action })
    }

    /// `tau_r(ev V(lambda))`
    pub fn evaluation(&self, rs: Arc<RootSystem>, r: i64) -> ExplicitModule {
        let labels: Vec<(i64, Weight)> = self.weights.iter().map(|w| (r, w.clone())).collect();
        let dim = rs.dim;
        ExplicitModule::from_sparse(
            rs,
            &labels,
            |g, i| if g < dim { self.action[g][i].clone() } else { Vec::new() },
            Some(self.words.clone()),
            Window::ALL,
            Status::Certified,
            format!("V({},{})", self.lambda, r),
        )
    }
}

struct VermaAction<'a> {
    rs: &'a RootSystem,
    alg: &'a mut PbwAlgebra,
    lambda: &'a Weight,
}

impl VermaAction<'_> {
    fn weight(&self, m: &[u16]) -> Weight {
        m.iter().fold(self.lambda.clone(), |w, &a| w.sub(&self.rs.pos_root_weights[a as usize]))
    }

    /// `x . (m v)` in the truncated Verma module.
    fn act(&mut self, x: usize, m: &[u16]) -> Vec<(Mono, i64)> {
        let rs = self.rs;
        match rs.kinds[x] {
            BasisKind::Neg(a) => (*self.alg.mul_elem(a as u16, m)).clone(),
            BasisKind::Cartan(i) => {
                let c = self.weight(m).0[i];
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(m.to_vec(), c)]
                }
            }
            BasisKind::Pos(_) => {
                if m.is_empty() {
                    return Vec::new();
                }
                let head = m[0] as usize;
                let rest = &m[1..];
                let mut acc: BTreeMap<Mono, i64> = BTreeMap::new();
                // [x, f_head] rest v
                for &(z, c) in &rs.bracket[x][rs.f(head)] {
                    for (mm, cc) in self.act(z, rest) {
                        *acc.entry(mm).or_insert(0) += c * cc;
                    }
                }
                // f_head (x rest v)
                let inner = self.act(x, rest);
                for (mm, cc) in self.alg.mul_elem_poly(head as u16, &inner) {
                    *acc.entry(mm).or_insert(0) += cc;
                }
                acc.into_iter().filter(|(_, c)| *c != 0).collect()
            }
        }
    }
}

/// Cache of simple modules keyed by highest weight.
#[derive(Default)]
pub struct SimpleCache {
    map: HashMap<Weight, Arc<SimpleModule>>,
}

impl SimpleCache {
    pub fn get(&mut self, rs: &RootSystem, lambda: &Weight) -> Result<Arc<SimpleModule>> {
        if let Some(s) = self.map.get(lambda) {
            return Ok(s.clone());
        }
        let s = Arc::new(SimpleModule::build(rs, lambda)?);
        self.map.insert(lambda.clone(), s.clone());
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanType;

    #[test]
    fn dimensions_and_brackets() {
        for (t, ws) in [
            (CartanType::A1, vec![vec![0], vec![1], vec![4]]),
            (CartanType::A2, vec![vec![1, 0], vec![1, 1], vec![2, 1]]),
            (CartanType::C2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
            (CartanType::A3, vec![vec![0, 1, 0], vec![1, 0, 1]]),
        ] {
            let rs = RootSystem::new(t);
            for w in ws {
                let lambda = Weight(w);
                let s = SimpleModule::build(&rs, &lambda).unwrap();
                let m = s.evaluation(rs.clone(), 0);
                m.check_brackets(0).unwrap();
                let ch: BTreeMap<Weight, i64> = m.character().grade_slice(0);
                assert_eq!(ch, rs.weyl_character(&lambda));
            }
        }
    }
}

//! PBW straightening in universal enveloping algebras of graded nilpotent
//! Lie algebras with integral structure constants.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

/// Non-decreasing sequence of basis indices.
pub type Mono = Vec<u16>;
pub type Poly = Vec<(Mono, i64)>;

pub struct PbwAlgebra {
    pub dim: usize,
    pub degree: Vec<u32>,
    /// products of total degree above this vanish
    pub max_degree: u32,
    bracket: Vec<Vec<Vec<(u16, i64)>>>,
    cache: HashMap<(u16, Mono), Rc<Poly>>,
}

fn add_into(acc: &mut BTreeMap<Mono, i64>, m: Mono, c: i64) {
    let e = acc.entry(m).or_insert(0);
    *e = e.checked_add(c).expect("PBW coefficient overflow");
}

fn finish(acc: BTreeMap<Mono, i64>) -> Poly {
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

impl PbwAlgebra {
    /// `bracket[a][b]` lists `[x_a, x_b]`; it must be antisymmetric, satisfy
    /// Jacobi and respect the grading.
    pub fn new(degree: Vec<u32>, max_degree: u32, bracket: Vec<Vec<Vec<(u16, i64)>>>) -> Self {
        let dim = degree.len();
        assert!(dim < u16::MAX as usize);
        PbwAlgebra { dim, degree, max_degree, bracket, cache: HashMap::new() }
    }

    pub fn mono_degree(&self, m: &[u16]) -> u32 {
        m.iter().map(|&x| self.degree[x as usize]).sum()
    }

    /// `x_z * m` in the PBW basis.
    pub fn mul_elem(&mut self, z: u16, m: &[u16]) -> Rc<Poly> {
        if self.degree[z as usize] + self.mono_degree(m) > self.max_degree {
            return Rc::new(Vec::new());
        }
        if m.is_empty() || z <= m[0] {
            let mut out = Vec::with_capacity(m.len() + 1);
            out.push(z);
            out.extend_from_slice(m);
            return Rc::new(vec![(out, 1)]);
        }
        let key = (z, m.to_vec());
        if let Some(r) = self.cache.get(&key) {
            return r.clone();
        }
        let y = m[0];
        let tail = &m[1..];
        let mut acc: BTreeMap<Mono, i64> = BTreeMap::new();
        // z y tail = y (z tail) + [z, y] tail
        let zt = self.mul_elem(z, tail);
        for (mm, c) in zt.iter() {
            let p = self.mul_elem(y, mm);
            for (m2, c2) in p.iter() {
                add_into(&mut acc, m2.clone(), c.checked_mul(*c2).expect("PBW coefficient overflow"));
            }
        }
        let br = self.bracket[z as usize][y as usize].clone();
        for (w, c) in br {
            let p = self.mul_elem(w, tail);
            for (m2, c2) in p.iter() {
                add_into(&mut acc, m2.clone(), c.checked_mul(*c2).expect("PBW coefficient overflow"));
            }
        }
        let r: Rc<Poly> = Rc::new(finish(acc));
        self.cache.insert(key, r.clone());
        r
    }

    /// `x_z * p` for a polynomial `p`.
    pub fn mul_elem_poly(&mut self, z: u16, p: &[(Mono, i64)]) -> Poly {
        let mut acc: BTreeMap<Mono, i64> = BTreeMap::new();
        for (m, c) in p {
            let r = self.mul_elem(z, m);
            for (m2, c2) in r.iter() {
                add_into(&mut acc, m2.clone(), c.checked_mul(*c2).expect("PBW coefficient overflow"));
            }
        }
        finish(acc)
    }

    /// Product of an arbitrary word of basis elements with a monomial.
    pub fn mul_word(&mut self, word: &[u16], m: &[u16]) -> Poly {
        let mut cur: Poly = vec![(m.to_vec(), 1)];
        for &z in word.iter().rev() {
            cur = self.mul_elem_poly(z, &cur);
        }
        cur
    }

    /// All PBW monomials of total degree at most `max`, ordered by degree and
    /// then lexicographically.
    pub fn monomials_up_to(&self, max: u32) -> Vec<Mono> {
        let mut out: Vec<Mono> = Vec::new();
        let mut stack: Vec<(Mono, u32)> = vec![(Vec::new(), 0)];
        while let Some((m, d)) = stack.pop() {
            let start = m.last().copied().unwrap_or(0);
            for z in start..self.dim as u16 {
                let nd = d + self.degree[z as usize];
                if nd <= max {
                    let mut m2 = m.clone();
                    m2.push(z);
                    stack.push((m2, nd));
                }
            }
            out.push(m);
        }
        out.sort_by(|a, b| self.mono_degree(a).cmp(&self.mono_degree(b)).then_with(|| a.cmp(b)));
        out
    }
}

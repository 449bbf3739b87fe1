//! Root systems, Chevalley bases and characters of finite-dimensional
//! simple modules.

use crate::linalg::{q, DMat, Q};
use crate::Error;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

/// Integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    /// `2w1+w2` style; the zero weight prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coef = match c {
                1 => String::new(),
                -1 => "-".to_string(),
                _ => c.to_string(),
            };
            parts.push(format!("{}w{}", coef, i + 1));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if p.starts_with('-') {
                s.push_str(p);
            } else {
                s.push('+');
                s.push_str(p);
            }
        }
        write!(f, "{}", s)
    }
}

/// Formal character of a finite-dimensional g-module.
pub type WeightChar = BTreeMap<Weight, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A1,
    A2,
    A3,
    C2,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" => Ok(CartanType::A1),
            "A2" => Ok(CartanType::A2),
            "A3" => Ok(CartanType::A3),
            "C2" => Ok(CartanType::C2),
            other => Err(Error::Unsupported(format!("Cartan type {other:?}; supported: A1, A2, A3, C2"))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CartanType::A1 => "A1",
            CartanType::A2 => "A2",
            CartanType::A3 => "A3",
            CartanType::C2 => "C2",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CartanDatum {
    pub kind: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = alpha_j(h_i)`
    pub cartan: Vec<Vec<i64>>,
    /// squared lengths `(alpha_i, alpha_i)`
    pub root_norms: Vec<i64>,
}

impl CartanDatum {
    pub fn new(kind: CartanType) -> Self {
        let a = |n: usize| -> Vec<Vec<i64>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { 2 } else if i.abs_diff(j) == 1 { -1 } else { 0 })
                        .collect()
                })
                .collect()
        };
        match kind {
            CartanType::A1 => CartanDatum { kind, rank: 1, cartan: a(1), root_norms: vec![2] },
            CartanType::A2 => CartanDatum { kind, rank: 2, cartan: a(2), root_norms: vec![2, 2] },
            CartanType::A3 => CartanDatum { kind, rank: 3, cartan: a(3), root_norms: vec![2, 2, 2] },
            // alpha_1 short, alpha_2 long
            CartanType::C2 => {
                CartanDatum { kind, rank: 2, cartan: vec![vec![2, -2], vec![-1, 2]], root_norms: vec![2, 4] }
            }
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        for i in 0..self.rank {
            for j in 0..self.rank {
                let c = self.cartan[i][j];
                if i == j && c != 2 || i != j && c > 0 {
                    return Err(Error::Unsupported("malformed Cartan matrix".into()));
                }
            }
        }
        Ok(())
    }
}

/// What a Chevalley basis element is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `x_alpha^+` for the positive root with this index
    Pos(usize),
    /// `x_alpha^-`
    Neg(usize),
    /// `h_i`
    Cartan(usize),
}

/// Sparse integer combination of Chevalley basis elements.
pub type LieVec = Vec<(usize, i64)>;

#[derive(Debug)]
pub struct RootSystem {
    pub datum: CartanDatum,
    pub rank: usize,
    /// positive roots in simple-root coordinates, ordered by height then
    /// with larger leading coordinates first; simple roots come first
    pub pos_roots: Vec<Vec<i64>>,
    /// the same roots in fundamental-weight coordinates
    pub pos_root_weights: Vec<Weight>,
    pub theta: usize,
    /// coroot `h_alpha` of each positive root in the basis `h_i`
    pub coroots: Vec<Vec<i64>>,
    pub dim: usize,
    pub kinds: Vec<BasisKind>,
    pub basis_weight: Vec<Weight>,
    /// `bracket[a][b] = [e_a, e_b]`
    pub bracket: Vec<Vec<LieVec>>,
    cartan_inv: DMat,
    /// Gram matrix of the invariant form in fundamental coordinates
    form: DMat,
    root_index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn new(kind: CartanType) -> Arc<RootSystem> {
        Arc::new(Self::build(CartanDatum::new(kind)).expect("built-in Cartan data is valid"))
    }

    pub fn build(datum: CartanDatum) -> Result<RootSystem, Error> {
        datum.validate()?;
        let rank = datum.rank;
        let a = &datum.cartan;
        let pos_roots = positive_roots(a);
        let npos = pos_roots.len();
        let to_weight = |c: &Vec<i64>| -> Weight {
            Weight((0..rank).map(|i| (0..rank).map(|j| a[i][j] * c[j]).sum()).collect())
        };
        let pos_root_weights: Vec<Weight> = pos_roots.iter().map(to_weight).collect();
        let root_index: HashMap<Vec<i64>, usize> =
            pos_roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let theta = (0..npos).max_by_key(|&i| pos_roots[i].iter().sum::<i64>()).unwrap();

        let amat = DMat::from_rows(&a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>());
        let cartan_inv = amat.inverse().ok_or_else(|| Error::Unsupported("singular Cartan matrix".into()))?;
        let mut bform = DMat::zeros(rank, rank);
        for i in 0..rank {
            for j in 0..rank {
                bform.set(i, j, q(a[i][j] * datum.root_norms[i]) / q(2));
            }
        }
        let form = cartan_inv.transpose().mul(&bform).mul(&cartan_inv);

        let coroots: Vec<Vec<i64>> = pos_roots
            .iter()
            .map(|c| {
                let norm = root_norm(&bform, c);
                (0..rank)
                    .map(|i| {
                        let v = q(c[i] * datum.root_norms[i]) / &norm;
                        assert!(v.is_integer());
                        crate::linalg::to_i64(&v).unwrap()
                    })
                    .collect()
            })
            .collect();

        let dim = 2 * npos + rank;
        let mut kinds = Vec::with_capacity(dim);
        let mut basis_weight = Vec::with_capacity(dim);
        for i in 0..npos {
            kinds.push(BasisKind::Pos(i));
            basis_weight.push(pos_root_weights[i].clone());
        }
        for i in 0..npos {
            kinds.push(BasisKind::Neg(i));
            basis_weight.push(pos_root_weights[i].neg());
        }
        for i in 0..rank {
            kinds.push(BasisKind::Cartan(i));
            basis_weight.push(Weight::zero(rank));
        }

        let mats = chevalley_matrices(datum.kind, &pos_roots, &root_index, a);
        let bracket = structure_table(&mats);

        Ok(RootSystem {
            datum,
            rank,
            pos_roots,
            pos_root_weights,
            theta,
            coroots,
            dim,
            kinds,
            basis_weight,
            bracket,
            cartan_inv,
            form,
            root_index,
        })
    }

    pub fn label(&self) -> &'static str {
        self.datum.kind.label()
    }

    pub fn num_pos(&self) -> usize {
        self.pos_roots.len()
    }

    pub fn e(&self, root: usize) -> usize {
        root
    }

    pub fn f(&self, root: usize) -> usize {
        self.num_pos() + root
    }

    pub fn h(&self, i: usize) -> usize {
        2 * self.num_pos() + i
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        self.pos_root_weights[i].clone()
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// Index of the positive root with these simple-root coordinates.
    pub fn root_by_coords(&self, c: &[i64]) -> Option<usize> {
        self.root_index.get(c).copied()
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn root_coords(&self, w: &Weight) -> Vec<Q> {
        let v: Vec<Q> = w.0.iter().map(|&x| q(x)).collect();
        self.cartan_inv.mul_vec(&v)
    }

    pub fn height(&self, w: &Weight) -> Q {
        self.root_coords(w).into_iter().fold(Q::zero(), |a, b| a + b)
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_coords(w).iter().all(|c| c.is_integer())
    }

    /// Invariant bilinear form.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        let av: Vec<Q> = a.0.iter().map(|&x| q(x)).collect();
        let bv: Vec<Q> = b.0.iter().map(|&x| q(x)).collect();
        let fb = self.form.mul_vec(&bv);
        av.iter().zip(&fb).fold(Q::zero(), |s, (x, y)| s + x * y)
    }

    /// `mu <= lambda` in dominance order, i.e. `lambda - mu` lies in `Q^+`.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.root_coords(&lambda.sub(mu)).iter().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn dominance_lt(&self, mu: &Weight, lambda: &Weight) -> bool {
        mu != lambda && self.dominance_leq(mu, lambda)
    }

    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        let a = &self.datum.cartan;
        Weight((0..self.rank).map(|j| w.0[j] - c * a[j][i]).collect())
    }

    /// Dominant representative of the Weyl orbit.
    pub fn dominant_rep(&self, w: &Weight) -> Weight {
        let mut cur = w.clone();
        while let Some(i) = cur.0.iter().position(|&c| c < 0) {
            cur = self.reflect(&cur, i);
        }
        cur
    }

    /// `-w0(lambda)`
    pub fn minus_w0(&self, lambda: &Weight) -> Weight {
        self.dominant_rep(&lambda.neg())
    }

    /// Whether `mu` lies in the convex hull of the Weyl orbit of dominant `lambda`
    /// and in `lambda` plus the root lattice.
    pub fn hull_membership(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.dominance_leq(&self.dominant_rep(mu), lambda)
    }

    pub fn weyl_dimension(&self, lambda: &Weight) -> Q {
        let lr = lambda.add(&self.rho());
        let mut num = Q::one();
        let mut den = Q::one();
        for a in &self.pos_root_weights {
            num *= self.inner(&lr, a);
            den *= self.inner(&self.rho(), a);
        }
        num / den
    }

    /// Weight multiplicities of `V(lambda)` by Freudenthal's recursion.
    pub fn weyl_character(&self, lambda: &Weight) -> WeightChar {
        assert!(lambda.is_dominant(), "weylCharacter needs a dominant weight");
        let rho = self.rho();
        let mut weights: Vec<(Q, Weight)> = Vec::new();
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::from([lambda.clone()]);
        seen.insert(lambda.clone());
        while let Some(mu) = queue.pop_front() {
            weights.push((self.height(&lambda.sub(&mu)), mu.clone()));
            for i in 0..self.rank {
                let nu = mu.sub(&self.simple_root(i));
                if !seen.contains(&nu) && self.hull_membership(&nu, lambda) {
                    seen.insert(nu.clone());
                    queue.push_back(nu);
                }
            }
        }
        weights.sort();
        let lr = lambda.add(&rho);
        let top = self.inner(&lr, &lr);
        let mut mult: HashMap<Weight, Q> = HashMap::new();
        for (_, mu) in &weights {
            if mu == lambda {
                mult.insert(mu.clone(), Q::one());
                continue;
            }
            let mut s = Q::zero();
            for a in &self.pos_root_weights {
                let mut k = 1;
                loop {
                    let nu = mu.add(&a.scale(k));
                    let Some(m) = mult.get(&nu) else { break };
                    s += self.inner(&nu, a) * m;
                    k += 1;
                }
            }
            let mr = mu.add(&rho);
            let den = &top - self.inner(&mr, &mr);
            let m = s * q(2) / den;
            assert!(m.is_integer(), "Freudenthal recursion produced a non-integer multiplicity");
            mult.insert(mu.clone(), m);
        }
        mult.into_iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(w, m)| (w, crate::linalg::to_i64(&m).unwrap()))
            .collect()
    }

    /// Character of the adjoint module.
    pub fn adjoint_character(&self) -> WeightChar {
        let mut c = WeightChar::new();
        for a in &self.pos_root_weights {
            *c.entry(a.clone()).or_default() += 1;
            *c.entry(a.neg()).or_default() += 1;
        }
        *c.entry(Weight::zero(self.rank)).or_default() += self.rank as i64;
        c
    }

    /// Decomposes a character into simple characters by stripping highest weights.
    pub fn decompose(&self, ch: &WeightChar) -> Result<BTreeMap<Weight, i64>, Error> {
        let mut rest: WeightChar = ch.iter().filter(|(_, &m)| m != 0).map(|(w, m)| (w.clone(), *m)).collect();
        let mut out = BTreeMap::new();
        while !rest.is_empty() {
            let top = rest
                .keys()
                .max_by(|x, y| self.height(x).cmp(&self.height(y)).then_with(|| x.cmp(y)))
                .unwrap()
                .clone();
            let m = rest[&top];
            if m < 0 || !top.is_dominant() {
                return Err(Error::NotAModule(format!("character has leading term {m} at weight {top}")));
            }
            for (w, k) in self.weyl_character(&top) {
                let e = rest.entry(w.clone()).or_insert(0);
                *e -= m * k;
                if *e == 0 {
                    rest.remove(&w);
                }
            }
            out.insert(top, m);
        }
        Ok(out)
    }

    /// Multiplicity of `V(lambda)` in `g (x) V(mu)`.
    pub fn hom_to_adjoint_tensor(&self, lambda: &Weight, mu: &Weight) -> i64 {
        let prod = char_product(&self.adjoint_character(), &self.weyl_character(mu));
        self.decompose(&prod).expect("tensor product character").get(lambda).copied().unwrap_or(0)
    }

    /// First `count` dominant weights ordered by root-basis height, then lexicographically.
    pub fn enumerate_dominant(&self, count: usize) -> Vec<Weight> {
        let min_h = (0..self.rank)
            .map(|i| {
                let mut w = Weight::zero(self.rank);
                w.0[i] = 1;
                self.height(&w)
            })
            .min()
            .unwrap();
        let mut k = 2i64;
        loop {
            let mut all: Vec<(Q, Weight)> = Vec::new();
            let mut cur = vec![0i64; self.rank];
            loop {
                let w = Weight(cur.clone());
                all.push((self.height(&w), w));
                let mut i = 0;
                loop {
                    if i == self.rank {
                        break;
                    }
                    cur[i] += 1;
                    if cur.iter().sum::<i64>() <= k {
                        break;
                    }
                    cur[i] = 0;
                    i += 1;
                }
                if i == self.rank {
                    break;
                }
            }
            all.sort();
            let bound = &min_h * q(k + 1);
            let complete: Vec<Weight> = all.into_iter().filter(|(h, _)| *h < bound).map(|(_, w)| w).collect();
            if complete.len() >= count {
                return complete.into_iter().take(count).collect();
            }
            k *= 2;
        }
    }

    /// Dominant weights `mu <= cap`, in enumeration order.
    pub fn dominant_below(&self, cap: &Weight) -> Vec<Weight> {
        let mut n = 8;
        loop {
            let list = self.enumerate_dominant(n);
            let cap_h = self.height(cap);
            if self.height(list.last().unwrap()) > cap_h {
                return list.into_iter().filter(|w| self.dominance_leq(w, cap)).collect();
            }
            n *= 2;
        }
    }

    /// Position of a dominant weight in the enumeration.
    pub fn enumeration_index(&self, w: &Weight) -> usize {
        let mut n = 8;
        loop {
            let list = self.enumerate_dominant(n);
            if let Some(i) = list.iter().position(|x| x == w) {
                return i;
            }
            n *= 2;
        }
    }

    /// Structure constant `N_{a,b}` with `[x_a, x_b] = N_{a,b} x_{a+b}`, for
    /// basis indices of root vectors.
    pub fn structure_constant(&self, a: usize, b: usize) -> i64 {
        let target = self.basis_weight[a].add(&self.basis_weight[b]);
        self.bracket[a][b].iter().find(|(c, _)| self.basis_weight[*c] == target).map(|(_, v)| *v).unwrap_or(0)
    }

    /// Jacobi identity on every basis triple; returns the first failure.
    pub fn check_jacobi(&self) -> Result<(), (usize, usize, usize)> {
        let d = self.dim;
        let br = |x: &LieVec, y: usize| -> Vec<i64> {
            let mut out = vec![0i64; d];
            for &(i, c) in x {
                for &(k, v) in &self.bracket[i][y] {
                    out[k] += c * v;
                }
            }
            out
        };
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let t1 = br(&self.bracket[a][b], c);
                    let t2 = br(&self.bracket[b][c], a);
                    let t3 = br(&self.bracket[c][a], b);
                    if (0..d).any(|k| t1[k] + t2[k] + t3[k] != 0) {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }
}

fn root_norm(bform: &DMat, c: &[i64]) -> Q {
    let v: Vec<Q> = c.iter().map(|&x| q(x)).collect();
    let bv = bform.mul_vec(&v);
    v.iter().zip(&bv).fold(Q::zero(), |s, (x, y)| s + x * y)
}

/// Product of two weight characters.
pub fn char_product(a: &WeightChar, b: &WeightChar) -> WeightChar {
    let mut out = WeightChar::new();
    for (wa, ma) in a {
        for (wb, mb) in b {
            *out.entry(wa.add(wb)).or_default() += ma * mb;
        }
    }
    out.retain(|_, m| *m != 0);
    out
}

fn positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut set: BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // p = how far the i-string extends downward from beta
                let mut p = 0;
                loop {
                    let mut d = beta.clone();
                    d[i] -= p + 1;
                    if set.contains(&d) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * a[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if set.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| y.cmp(x))
    });
    roots
}

fn unit(n: usize, i: usize, j: usize) -> DMat {
    let mut m = DMat::zeros(n, n);
    m.set(i, j, Q::one());
    m
}

fn commutator(x: &DMat, y: &DMat) -> DMat {
    x.mul(y).sub(&y.mul(x))
}

/// Matrices of the Chevalley basis in a faithful representation. Root vectors
/// of non-simple roots are normalised along extraspecial pairs so that
/// `N_{alpha,beta} = p + 1 > 0` there.
fn chevalley_matrices(
    kind: CartanType,
    pos_roots: &[Vec<i64>],
    root_index: &HashMap<Vec<i64>, usize>,
    a: &[Vec<i64>],
) -> Vec<DMat> {
    let rank = a.len();
    let (es, fs): (Vec<DMat>, Vec<DMat>) = match kind {
        CartanType::A1 | CartanType::A2 | CartanType::A3 => {
            let n = rank + 1;
            ((0..rank).map(|i| unit(n, i, i + 1)).collect(), (0..rank).map(|i| unit(n, i + 1, i)).collect())
        }
        CartanType::C2 => {
            let e1 = unit(4, 0, 1).sub(&unit(4, 2, 3));
            let e2 = unit(4, 1, 2);
            let f1 = unit(4, 1, 0).sub(&unit(4, 3, 2));
            let f2 = unit(4, 2, 1);
            (vec![e1, e2], vec![f1, f2])
        }
    };
    let npos = pos_roots.len();
    let mut pos: Vec<Option<DMat>> = vec![None; npos];
    let mut neg: Vec<Option<DMat>> = vec![None; npos];
    for i in 0..rank {
        pos[i] = Some(es[i].clone());
        neg[i] = Some(fs[i].clone());
    }
    let is_root = |c: &Vec<i64>| -> bool {
        let sgn: Vec<i64> = c.iter().map(|x| x.abs()).collect();
        (c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0)) && root_index.contains_key(&sgn)
    };
    for k in rank..npos {
        let xi = &pos_roots[k];
        let i = (0..rank)
            .find(|&i| {
                let mut b = xi.clone();
                b[i] -= 1;
                root_index.contains_key(&b)
            })
            .expect("non-simple root has a simple summand");
        let mut beta = xi.clone();
        beta[i] -= 1;
        let bi = root_index[&beta];
        let mut p = 0;
        loop {
            let mut d = beta.clone();
            d[i] -= p + 1;
            if d.iter().any(|&x| x != 0) && is_root(&d) {
                p += 1;
            } else {
                break;
            }
        }
        let s = q(1) / q(p + 1);
        pos[k] = Some(commutator(pos[i].as_ref().unwrap(), pos[bi].as_ref().unwrap()).scale(&s));
        neg[k] = Some(commutator(neg[i].as_ref().unwrap(), neg[bi].as_ref().unwrap()).scale(&(-s)));
    }
    let mut mats: Vec<DMat> = pos.into_iter().map(|m| m.unwrap()).collect();
    mats.extend(neg.into_iter().map(|m| m.unwrap()));
    for i in 0..rank {
        mats.push(commutator(&es[i], &fs[i]));
    }
    mats
}

fn structure_table(mats: &[DMat]) -> Vec<Vec<LieVec>> {
    let d = mats.len();
    let n = mats[0].rows;
    let cols: Vec<Vec<Q>> = mats.iter().map(|m| m.data.clone()).collect();
    let basis = DMat::from_cols(n * n, &cols);
    let mut table = vec![vec![Vec::new(); d]; d];
    for a in 0..d {
        for b in 0..d {
            let c = commutator(&mats[a], &mats[b]);
            if c.is_zero() {
                continue;
            }
            let x = basis.solve(&c.data).expect("bracket closes on the Chevalley basis");
            table[a][b] = x
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, crate::linalg::to_i64(v).expect("integral structure constants")))
                .collect();
        }
    }
    table
}

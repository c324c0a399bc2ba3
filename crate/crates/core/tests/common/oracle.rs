//! Dense reference computations written from the definitions, sharing no
//! code with the library beyond the element container.

#![allow(dead_code)]

use cuntz_endo::element::{Element, C64};
use nalgebra::DMatrix;

pub type M = DMatrix<C64>;

pub fn eye(d: usize) -> M {
    M::identity(d, d)
}

/// Lexicographic index of a 1-based word.
pub fn idx(w: &[u16], n: usize) -> usize {
    w.iter().fold(0, |acc, &l| acc * n + (l as usize - 1))
}

pub fn words(n: usize, len: usize) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=n as u16).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

/// Matrix of a degree-0 element at `level`, expanding `S_αS_β* = Σ_μ S_{αμ}S_{βμ}*`.
pub fn dense(x: &Element, level: usize) -> M {
    let n = x.n();
    let d = n.pow(level as u32);
    let mut m = M::zeros(d, d);
    for t in x.terms() {
        let a = t.alpha.letters();
        let b = t.beta.letters();
        assert_eq!(a.len(), b.len(), "dense oracle needs degree 0");
        for mu in words(n, level - a.len()) {
            let ra = idx(&[a, &mu[..]].concat(), n);
            let rb = idx(&[b, &mu[..]].concat(), n);
            m[(ra, rb)] += t.coeff;
        }
    }
    m
}

/// `u φ(u) ⋯ φ^{m−1}(u)` with `φ^j(u) = 1_{n^j} ⊗ u ⊗ 1`.
pub fn tower(u: &M, n: usize, k: usize, m: usize) -> M {
    let total = m + k - 1;
    let mut t = eye(n.pow(total as u32));
    for j in 0..m {
        let f = eye(n.pow(j as u32))
            .kronecker(u)
            .kronecker(&eye(n.pow((total - j - k) as u32)));
        t *= f;
    }
    t
}

/// `λ_u(x)` for `x` at level `m`, `u` at level `k`; result at level `m + k − 1`.
pub fn lam(u: &M, n: usize, k: usize, x: &M, m: usize) -> M {
    if m == 0 {
        return x.clone();
    }
    let t = tower(u, n, k, m);
    let x_up = x.kronecker(&eye(n.pow((k - 1) as u32)));
    &t * x_up * t.adjoint()
}

/// Embeds a level-`from` matrix at level `to`.
pub fn up(x: &M, n: usize, from: usize, to: usize) -> M {
    x.kronecker(&eye(n.pow((to - from) as u32)))
}

/// Unitary of `λ_u ∘ λ_w`: `λ_u(w) u`, with its level.
pub fn compose(u: &M, ku: usize, w: &M, kw: usize, n: usize) -> (M, usize) {
    let a = lam(u, n, ku, w, kw);
    let la = kw + ku - 1;
    let level = la.max(ku);
    (up(&a, n, la, level) * up(u, n, ku, level), level)
}

pub fn max_abs(m: &M) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn is_diag(m: &M, eps: f64) -> bool {
    let tol = eps * max_abs(m).max(1.0);
    (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| i == j || m[(i, j)].norm() <= tol))
}

/// `λ_w(P_α)` diagonal for every `1 ≤ |α| ≤ depth`.
pub fn brute_preserves(w: &M, n: usize, k: usize, depth: usize, eps: f64) -> bool {
    for m in 1..=depth {
        for a in words(n, m) {
            let mut p = M::zeros(n.pow(m as u32), n.pow(m as u32));
            let i = idx(&a, n);
            p[(i, i)] = C64::new(1.0, 0.0);
            if !is_diag(&lam(w, n, k, &p, m), eps) {
                return false;
            }
        }
    }
    true
}

/// Numerical rank of a set of matrices viewed as vectors.
pub fn rank(mats: &[M], tol: f64) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let len = mats[0].len();
    let stacked = M::from_fn(len, mats.len(), |r, c| mats[c][r]);
    stacked
        .svd(false, false)
        .singular_values
        .iter()
        .filter(|s| **s > tol)
        .count()
}

/// Finite abelian group as tuples, enumerated lexicographically.
pub struct Group {
    pub orders: Vec<usize>,
    pub elems: Vec<Vec<usize>>,
}

impl Group {
    pub fn new(orders: &[usize]) -> Self {
        let mut elems = vec![vec![]];
        for &m in orders {
            elems = elems
                .into_iter()
                .flat_map(|e| {
                    (0..m).map(move |x| {
                        let mut v = e.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        Group {
            orders: orders.to_vec(),
            elems,
        }
    }

    pub fn n(&self) -> usize {
        self.elems.len()
    }

    fn find(&self, t: &[usize]) -> usize {
        self.elems.iter().position(|e| e == t).unwrap()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let t: Vec<usize> = (0..self.orders.len())
            .map(|j| (self.elems[a][j] + self.elems[b][j]) % self.orders[j])
            .collect();
        self.find(&t)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        let t: Vec<usize> = (0..self.orders.len())
            .map(|j| (self.elems[a][j] + self.orders[j] - self.elems[b][j]) % self.orders[j])
            .collect();
        self.find(&t)
    }

    pub fn bracket(&self, a: usize, b: usize) -> C64 {
        let mut z = C64::new(1.0, 0.0);
        for j in 0..self.orders.len() {
            let m = self.orders[j] as f64;
            let p = (self.elems[a][j] * self.elems[b][j]) as f64;
            z *= C64::from_polar(1.0, 2.0 * std::f64::consts::PI * p / m);
        }
        z
    }

    /// Index of a pair `(a, b)` of group elements at level 2.
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.n() + b
    }

    pub fn v_lambda(&self) -> M {
        let n = self.n();
        let s = 1.0 / (n as f64).sqrt();
        let mut m = M::zeros(n * n, n * n);
        for g in 0..n {
            for h in 0..n {
                for l in 0..n {
                    m[(self.pair(h, l), self.pair(g, l))] += self.bracket(g, self.sub(h, l)) * s;
                }
            }
        }
        m
    }

    pub fn beta(&self) -> M {
        let n = self.n();
        let s = 1.0 / (n as f64).sqrt();
        M::from_fn(n, n, |a, h| self.bracket(h, a) * s)
    }

    pub fn v_lambda_prime(&self) -> M {
        let n = self.n();
        let mut m = M::zeros(n * n, n * n);
        for h in 0..n {
            for b in 0..n {
                let hb = self.add(h, b);
                m[(self.pair(b, hb), self.pair(h, hb))] += C64::new(1.0, 0.0);
            }
        }
        m
    }

    pub fn v_lambda_squared(&self) -> M {
        let n = self.n();
        let mut m = M::zeros(n * n, n * n);
        for g in 0..n {
            for h in 0..n {
                m[(self.pair(g, self.add(h, g)), self.pair(h, g))] += C64::new(1.0, 0.0);
            }
        }
        m
    }
}

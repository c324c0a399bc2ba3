//! Dense representation `F_n^k ≅ M_n(ℂ)^{⊗k}`.
//!
//! Rows and columns are indexed by `W_n^k` in lexicographic order, the first
//! letter being the most significant digit. With this ordering the shift `φ`
//! tensors on the left (`φ(x) ↔ 1 ⊗ X`) and embedding into the next level
//! tensors on the right (`X ↔ X ⊗ 1`).

use nalgebra::DMatrix;
use serde::Serialize;

use crate::config::Config;
use crate::element::{Element, Term, C64};
use crate::error::{Error, Result};
use crate::word::Word;

pub type CMat = DMatrix<C64>;

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep {
    pub n: usize,
    pub level: usize,
    pub entries: CMat,
}

impl MatrixRep {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Same element one level higher: `X ⊗ 1_n`.
    pub fn embed(&self) -> MatrixRep {
        MatrixRep {
            n: self.n,
            level: self.level + 1,
            entries: self.entries.kronecker(&CMat::identity(self.n, self.n)),
        }
    }

    /// Row-major dump as `[[re, im], …]` rows, for debugging output.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dump {
            n: usize,
            level: usize,
            rows: Vec<Vec<[f64; 2]>>,
        }
        let rows = (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| [self.entries[(i, j)].re, self.entries[(i, j)].im])
                    .collect()
            })
            .collect();
        serde_json::to_value(Dump {
            n: self.n,
            level: self.level,
            rows,
        })
        .expect("matrix dump serializes")
    }
}

pub(crate) fn check_dim(n: usize, level: usize, cfg: &Config) -> Result<usize> {
    let dim = n
        .checked_pow(level as u32)
        .ok_or_else(|| Error::resource("matrix dimension", usize::MAX, cfg.max_dim()))?;
    if dim > cfg.max_dim() {
        return Err(Error::resource(
            format!("matrix dimension at level {level}"),
            dim,
            cfg.max_dim(),
        ));
    }
    Ok(dim)
}

/// Matrix of `x ∈ F_n^k`: the raised term `(α, β)` lands at entry `(α, β)`.
pub fn to_matrix(x: &Element, k: usize, cfg: &Config) -> Result<MatrixRep> {
    if !x.is_degree_zero() {
        return Err(Error::domain(format!(
            "element has gauge degrees {:?}; only degree 0 has a matrix form",
            x.degrees()
        )));
    }
    if x.level() > k {
        return Err(Error::domain(format!(
            "element needs level {} but level {k} was requested",
            x.level()
        )));
    }
    let n = x.n();
    let dim = check_dim(n, k, cfg)?;
    let mut m = CMat::zeros(dim, dim);
    for (a, b, c) in x.raw_terms() {
        let extra = k - a.len();
        let block = n.pow(extra as u32);
        let (ra, rb) = (a.index(n) * block, b.index(n) * block);
        for mu in 0..block {
            m[(ra + mu, rb + mu)] += c;
        }
    }
    Ok(MatrixRep {
        n,
        level: k,
        entries: m,
    })
}

/// Reads a level-k matrix back as an element, dropping entries with modulus
/// at most `eps`.
pub fn from_matrix(rep: &MatrixRep, eps: f64) -> Element {
    let n = rep.n;
    let dim = rep.dim();
    let terms = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let c = rep.entries[(i, j)];
            (c.norm() > eps).then(|| {
                Term::new(
                    c,
                    Word::from_index(i, n, rep.level),
                    Word::from_index(j, n, rep.level),
                )
            })
        });
    Element::from_terms(n, terms, eps).expect("indices produce valid letters")
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn unitary_defect(m: &CMat) -> f64 {
    let id = CMat::identity(m.nrows(), m.ncols());
    let a = m * m.adjoint() - &id;
    let b = m.adjoint() * m - id;
    max_abs(&a).max(max_abs(&b))
}

pub fn is_unitary_matrix(m: &CMat, eps: f64) -> bool {
    m.is_square() && unitary_defect(m) <= eps
}

/// `‖M M† − 1‖_max ≤ ε` and `‖M† M − 1‖_max ≤ ε` at level `k`.
pub fn is_unitary(x: &Element, k: usize, cfg: &Config) -> Result<bool> {
    let rep = to_matrix(x, k, cfg)?;
    Ok(is_unitary_matrix(&rep.entries, cfg.eps))
}

/// One entry of modulus above `eps` in every row and column.
pub fn is_monomial_matrix(m: &CMat, eps: f64) -> bool {
    let big = |c: &C64| c.norm() > eps;
    let rows_ok = m.row_iter().all(|r| r.iter().filter(|c| big(c)).count() == 1);
    let cols_ok = m.column_iter().all(|c| c.iter().filter(|x| big(x)).count() == 1);
    rows_ok && cols_ok
}

/// Whether the unitary `x ∈ F_n^k` is a permutation times a diagonal unitary,
/// equivalently whether it normalizes the diagonal.
pub fn is_monomial(x: &Element, k: usize, cfg: &Config) -> Result<bool> {
    let rep = to_matrix(x, k, cfg)?;
    if !is_unitary_matrix(&rep.entries, cfg.eps) {
        return Err(Error::domain("monomial test needs a unitary input"));
    }
    Ok(is_monomial_matrix(&rep.entries, cfg.eps))
}

/// Diagonal within `eps · max(1, ‖M‖_max)`.
pub fn is_diagonal_matrix(m: &CMat, eps: f64) -> bool {
    let tol = eps * max_abs(m).max(1.0);
    m.iter()
        .enumerate()
        .all(|(idx, c)| idx % m.nrows() == idx / m.nrows() || c.norm() <= tol)
}

/// `1_{n^left} ⊗ M ⊗ 1_{n^right}`.
pub fn sandwich(m: &CMat, n: usize, left: usize, right: usize) -> CMat {
    let l = CMat::identity(n.pow(left as u32), n.pow(left as u32));
    let r = CMat::identity(n.pow(right as u32), n.pow(right as u32));
    l.kronecker(m).kronecker(&r)
}

/// Left-multiplies `x` (dimension `n^total`) by `1^{⊗offset} ⊗ W ⊗ 1^{⊗rest}`
/// where `W` has dimension `n^width`, without forming the big matrix.
pub fn apply_local(w: &CMat, n: usize, width: usize, offset: usize, total: usize, x: &CMat) -> CMat {
    let block = n.pow(width as u32);
    let inner = n.pow((total - offset - width) as u32);
    let outer = n.pow(offset as u32);
    let mut out = CMat::zeros(x.nrows(), x.ncols());
    for col in 0..x.ncols() {
        for o in 0..outer {
            for i in 0..inner {
                for r in 0..block {
                    let row = (o * block + r) * inner + i;
                    let mut acc = C64::new(0.0, 0.0);
                    for s in 0..block {
                        let w_rs = w[(r, s)];
                        if w_rs.re != 0.0 || w_rs.im != 0.0 {
                            acc += w_rs * x[((o * block + s) * inner + i, col)];
                        }
                    }
                    out[(row, col)] = acc;
                }
            }
        }
    }
    out
}

/// Matrix of the tower `u_m = u φ(u) ⋯ φ^{m−1}(u)` for `u` given at level
/// `k`; the result lives at level `m + k − 1`.
pub fn tower_matrix(u: &CMat, n: usize, k: usize, m: usize) -> CMat {
    assert!(m >= 1 && k >= 1, "tower needs m, k >= 1");
    let total = m + k - 1;
    let dim = n.pow(total as u32);
    let mut t = CMat::identity(dim, dim);
    // u_m = u · φ(u) ⋯ φ^{m−1}(u); build from the right.
    for j in (0..m).rev() {
        t = apply_local(u, n, k, j, total, &t);
    }
    t
}

/// Slice of the last tensor factor: entry `(α′, β′)` of the result is entry
/// `(α′i, β′j)` of `a`.
pub fn slice_last(a: &CMat, n: usize, i: usize, j: usize) -> CMat {
    let d = a.nrows() / n;
    CMat::from_fn(d, d, |r, c| a[(r * n + i, c * n + j)])
}

/// Row-major vectorization.
pub fn vectorize(m: &CMat) -> nalgebra::DVector<C64> {
    nalgebra::DVector::from_iterator(
        m.nrows() * m.ncols(),
        (0..m.nrows()).flat_map(|r| (0..m.ncols()).map(move |c| m[(r, c)])),
    )
}

pub fn unvectorize(v: &nalgebra::DVector<C64>, dim: usize) -> CMat {
    CMat::from_fn(dim, dim, |r, c| v[r * dim + c])
}

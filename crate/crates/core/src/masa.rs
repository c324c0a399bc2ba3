//! The diagonal MASA `D_n`, standard MASAs `λ_z(D_n)`, and the finite
//! procedure deciding whether `λ_w(D_n) ⊆ D_n` for `w ∈ F_n^k`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::element::{Element, C64};
use crate::endo::lambda_apply;
use crate::error::{Error, Result};
use crate::matrix::{
    self, from_matrix, is_diagonal_matrix, is_monomial, is_unitary_matrix, max_abs, sandwich, slice_last,
    tower_matrix, unvectorize, vectorize, CMat, MatrixRep,
};
use crate::subspace::{CVec, Subspace};
use crate::word::Word;

/// Membership in `D_n`: nonzero gauge components vanish and the degree-0
/// part, raised to a common level, has only `α = β` terms. Tolerance is
/// `eps · max(1, largest coefficient)`.
pub fn is_diagonal(x: &Element, eps: f64) -> bool {
    let raw = Config {
        eps: 0.0,
        max_terms: usize::MAX,
        ..Config::default()
    };
    let scale = x.terms().map(|t| t.coeff.norm()).fold(1.0, f64::max);
    let tol = eps * scale;
    let parts = x.gauge_decompose();
    for d in parts.degrees() {
        let comp = parts.component(d);
        let len = comp.terms().map(|t| t.beta.len()).max().unwrap_or(0);
        let raised = match comp.raise_uniform(len, &raw) {
            Ok(r) => r,
            Err(_) => return false,
        };
        let ok = raised
            .terms()
            .all(|t| (d == 0 && t.alpha == t.beta) || t.coeff.norm() <= tol);
        if !ok {
            return false;
        }
    }
    true
}

/// The `n × n` slices `E_ij(a) ∈ F_n^{k−1}` of the last tensor factor, so
/// that `a = Σ_ij E_ij(a) φ^{k−1}(S_i S_j*)`. Indices are 0-based.
pub fn e_slices(a: &Element, k: usize, cfg: &Config) -> Result<Vec<Vec<Element>>> {
    if k == 0 {
        return Err(Error::domain("slices need k >= 1"));
    }
    let rep = matrix::to_matrix(a, k, cfg)?;
    let n = a.n();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    from_matrix(
                        &MatrixRep {
                            n,
                            level: k - 1,
                            entries: slice_last(&rep.entries, n, i, j),
                        },
                        0.0,
                    )
                })
                .collect()
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Iterative,
    DirectOracle,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecisionReport {
    pub n: usize,
    pub k: usize,
    pub preserves_diagonal: bool,
    /// First index with no span growth; on failure, the index of the
    /// subspace being built when the non-diagonal image turned up.
    #[serde(rename = "R")]
    pub r: usize,
    pub subspace_dims: Vec<usize>,
    pub witness: Option<Element>,
    pub method: Method,
    pub eps: f64,
}

impl DecisionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn unitary_rep(w: &Element, k: usize, cfg: &Config) -> Result<MatrixRep> {
    if k == 0 {
        return Err(Error::domain("level k must be at least 1"));
    }
    let rep = matrix::to_matrix(w, k, cfg)?;
    if !is_unitary_matrix(&rep.entries, cfg.eps) {
        return Err(Error::domain(format!(
            "w is not unitary at level {k} within ε = {}",
            cfg.eps
        )));
    }
    Ok(rep)
}

/// Matrix of `P_i` (0-based `i`) at level 1.
fn level_one_projection(n: usize, i: usize) -> CMat {
    let mut p = CMat::zeros(n, n);
    p[(i, i)] = C64::new(1.0, 0.0);
    p
}

/// Decides `λ_w(D_n) ⊆ D_n` for a unitary `w ∈ F_n^k`.
///
/// Works entirely at level `k`: the subspaces `𝔖_r ⊆ D_n^{k−1}` are grown by
/// the diagonal slices of `w φ(x) w*` until they stop growing, and every
/// such image must itself be diagonal.
pub fn decide_diagonal_invariance(w: &Element, k: usize, cfg: &Config) -> Result<DecisionReport> {
    Ok(decide_with_subspace(w, k, cfg)?.0)
}

/// Same as [`decide_diagonal_invariance`], also returning the last subspace
/// reached, as vectorized `n^{k−1} × n^{k−1}` matrices.
pub fn decide_with_subspace(w: &Element, k: usize, cfg: &Config) -> Result<(DecisionReport, Subspace)> {
    let rep = unitary_rep(w, k, cfg)?;
    let n = w.n();
    let d = n.pow(k as u32 - 1);
    let wm = &rep.entries;
    let wa = wm.adjoint();
    let report = |ok: bool, r: usize, dims: Vec<usize>, witness: Option<&CMat>| DecisionReport {
        n,
        k,
        preserves_diagonal: ok,
        r,
        subspace_dims: dims,
        witness: witness.map(|y| {
            from_matrix(
                &MatrixRep {
                    n,
                    level: k,
                    entries: y.clone(),
                },
                cfg.eps,
            )
        }),
        method: Method::Iterative,
        eps: cfg.eps,
    };

    let mut space = Subspace::new(d * d, cfg.eps);
    space.push(&vectorize(&CMat::identity(d, d)))?;
    let mut dims = vec![space.dim()];
    let mut fresh: Vec<CVec> = Vec::new();

    let absorb = |y: &CMat, space: &mut Subspace, fresh: &mut Vec<CVec>| -> Result<()> {
        for j in 0..n {
            let s = slice_last(y, n, j, j);
            if space.push(&vectorize(&s))? {
                fresh.push(space.basis().last().expect("just pushed").clone());
            }
        }
        Ok(())
    };

    for i in 0..n {
        let x = sandwich(&level_one_projection(n, i), n, 0, k - 1);
        let y = wm * x * &wa;
        if !is_diagonal_matrix(&y, cfg.eps) {
            return Ok((report(false, 1, dims, Some(&y)), space));
        }
        absorb(&y, &mut space, &mut fresh)?;
    }
    debug_assert!(fresh
        .iter()
        .all(|v| is_diagonal_matrix(&unvectorize(v, d), cfg.eps)));
    dims.push(space.dim());

    let mut r = 1;
    while !fresh.is_empty() {
        let current = std::mem::take(&mut fresh);
        for v in &current {
            let x = sandwich(&unvectorize(v, d), n, 1, 0);
            let y = wm * x * &wa;
            if !is_diagonal_matrix(&y, cfg.eps) {
                return Ok((report(false, r + 1, dims, Some(&y)), space));
            }
            absorb(&y, &mut space, &mut fresh)?;
        }
        dims.push(space.dim());
        r += 1;
    }
    Ok((report(true, r, dims, None), space))
}

/// Brute force: `λ_w(P_α)` is diagonal for every `|α| ≤ depth`, computed
/// through the tower at level `depth + k − 1`.
pub fn oracle_direct_check(w: &Element, k: usize, depth: usize, cfg: &Config) -> Result<bool> {
    let rep = unitary_rep(w, k, cfg)?;
    let n = w.n();
    matrix::check_dim(n, depth + k - 1, cfg)?;
    let block = n.pow(k as u32 - 1);
    for m in 1..=depth {
        let t = tower_matrix(&rep.entries, n, k, m);
        for a in 0..n.pow(m as u32) {
            let cols = t.columns(a * block, block);
            let y = cols * cols.adjoint();
            if !is_diagonal_matrix(&y, cfg.eps) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn span_of(mats: impl IntoIterator<Item = CMat>, ambient: usize, eps: f64) -> Result<Subspace> {
    let mut s = Subspace::new(ambient, eps);
    for m in mats {
        s.push(&vectorize(&m))?;
    }
    Ok(s)
}

fn same_span(a: &Subspace, b: &Subspace) -> Result<bool> {
    Ok(a.contains_subspace(b)? && b.contains_subspace(a)?)
}

/// `span{w P_i w*} = span{φ^{k−1}(P_i)}`: a sufficient condition for
/// diagonal invariance.
pub fn sufficient_cor42(w: &Element, k: usize, cfg: &Config) -> Result<bool> {
    let rep = unitary_rep(w, k, cfg)?;
    let n = w.n();
    let wm = &rep.entries;
    let dim = rep.dim();
    let lhs = span_of(
        (0..n).map(|i| wm * sandwich(&level_one_projection(n, i), n, 0, k - 1) * wm.adjoint()),
        dim * dim,
        cfg.eps,
    )?;
    let rhs = span_of(
        (0..n).map(|i| sandwich(&level_one_projection(n, i), n, k - 1, 0)),
        dim * dim,
        cfg.eps,
    )?;
    same_span(&lhs, &rhs)
}

/// The same comparison for `u ∈ F_n^k` against the standard MASA of
/// `z ∈ F_n^1`: `span{u (z P_i z*) u*} = span{φ^{k−1}(z P_i z*)}`.
pub fn sufficient_cor43(u: &Element, z: &Element, k: usize, cfg: &Config) -> Result<bool> {
    let rep = unitary_rep(u, k, cfg)?;
    let zm = unitary_rep(z, 1, cfg)?.entries;
    let n = u.n();
    let um = &rep.entries;
    let dim = rep.dim();
    let q = |i: usize| &zm * level_one_projection(n, i) * zm.adjoint();
    let lhs = span_of(
        (0..n).map(|i| um * sandwich(&q(i), n, 0, k - 1) * um.adjoint()),
        dim * dim,
        cfg.eps,
    )?;
    let rhs = span_of((0..n).map(|i| sandwich(&q(i), n, k - 1, 0)), dim * dim, cfg.eps)?;
    same_span(&lhs, &rhs)
}

/// `w D_n^1 w* ⊆ D_n^k` and `w` commutes with `φ^r(w P_i w*)` for
/// `r = 1..k−1`.
pub fn sufficient_prop45(w: &Element, k: usize, cfg: &Config) -> Result<bool> {
    let rep = unitary_rep(w, k, cfg)?;
    let n = w.n();
    let wm = &rep.entries;
    let images: Vec<CMat> = (0..n)
        .map(|i| wm * sandwich(&level_one_projection(n, i), n, 0, k - 1) * wm.adjoint())
        .collect();
    if !images.iter().all(|y| is_diagonal_matrix(y, cfg.eps)) {
        return Ok(false);
    }
    for r in 1..k {
        matrix::check_dim(n, k + r, cfg)?;
        let w_up = sandwich(wm, n, 0, r);
        for y in &images {
            let shifted = sandwich(y, n, r, 0);
            let comm = &w_up * &shifted - &shifted * &w_up;
            if max_abs(&comm) > cfg.eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_level_one(z: &Element, what: &str) -> Result<()> {
    if !z.is_degree_zero() || z.level() > 1 {
        return Err(Error::domain(format!("{what} must lie in F_n^1")));
    }
    Ok(())
}

/// `λ_{z*}(u)`, the unitary of `λ_z^{-1} λ_u λ_z`. For `u ∈ F_n^k` this is
/// `z_k* u z_k`; mixed-degree `u` goes through `λ_{z*}` term by term.
pub fn conjugate_by_bogolyubov(u: &Element, z: &Element, cfg: &Config) -> Result<Element> {
    check_level_one(z, "z")?;
    if u.n() != z.n() {
        return Err(Error::usage("u and z live in different O_n"));
    }
    if !u.is_degree_zero() {
        return lambda_apply(&z.adjoint(), u, cfg);
    }
    let k = u.level().max(1);
    let zk = z.tower(k, cfg)?;
    zk.adjoint().mul(u, cfg)?.mul(&zk, cfg)
}

/// Decides `λ_u(λ_z(D_n)) ⊆ λ_z(D_n)` by reducing to the diagonal.
pub fn standard_masa_invariance(u: &Element, z: &Element, cfg: &Config) -> Result<DecisionReport> {
    let k = u.level().max(1);
    decide_diagonal_invariance(&conjugate_by_bogolyubov(u, z, cfg)?, k, cfg)
}

/// `λ_w(D_n) = λ_z(D_n)` for `w, z ∈ F_n^1`, i.e. `w* z` is monomial.
pub fn masa_equal(w: &Element, z: &Element, cfg: &Config) -> Result<bool> {
    check_level_one(w, "w")?;
    check_level_one(z, "z")?;
    is_monomial(&w.adjoint().mul(z, cfg)?, 1, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `v ∈ F_n^k` with `k ≤ depth`: the monomial test, which is exact.
    ExactMonomial,
    /// Only `v P_α v* ∈ D_n` for `|α| ≤ depth` was checked.
    FiniteDepth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerCheck {
    pub holds: bool,
    pub regime: Regime,
    pub depth: usize,
}

/// Necessary condition for `Ad v(D_n) ⊆ D_n` (exact in the `F_n^k` case).
pub fn ad_normalizer_necessary(v: &Element, depth: usize, cfg: &Config) -> Result<NormalizerCheck> {
    if v.is_degree_zero() && v.level() <= depth.max(1) {
        let k = v.level().max(1);
        return Ok(NormalizerCheck {
            holds: is_monomial(v, k, cfg)?,
            regime: Regime::ExactMonomial,
            depth,
        });
    }
    let va = v.adjoint();
    let mut holds = true;
    'outer: for m in 1..=depth {
        for alpha in Word::all(v.n(), m) {
            let p = Element::projection(v.n(), alpha.letters());
            let img = v.mul(&p, cfg)?.mul(&va, cfg)?;
            if !is_diagonal(&img, cfg.eps) {
                holds = false;
                break 'outer;
            }
        }
    }
    Ok(NormalizerCheck {
        holds,
        regime: Regime::FiniteDepth,
        depth,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CylinderEntry {
    pub alpha: Word,
    pub images: Vec<Word>,
    /// Present only when some coefficient is neither 0 nor 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<(Word, f64)>>,
}

/// `λ_w` on the minimal projections of `D_n` at a fixed depth, as a map
/// from cylinders of length `depth` to cylinders of length `depth + k − 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CylinderMap {
    pub depth: usize,
    pub k: usize,
    pub entries: Vec<CylinderEntry>,
}

impl CylinderMap {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cylinder maps serialize")
    }

    pub fn image(&self, alpha: &Word) -> Option<&[Word]> {
        self.entries
            .iter()
            .find(|e| &e.alpha == alpha)
            .map(|e| e.images.as_slice())
    }

    pub fn is_coefficient_valued(&self) -> bool {
        self.entries.iter().any(|e| e.weights.is_some())
    }
}

pub fn restrict_to_diagonal(w: &Element, k: usize, depth: usize, cfg: &Config) -> Result<CylinderMap> {
    if depth == 0 {
        return Err(Error::domain("restriction depth must be at least 1"));
    }
    if !decide_diagonal_invariance(w, k, cfg)?.preserves_diagonal {
        return Err(Error::domain(
            "λ_w does not preserve the diagonal; run `decide` first, restriction needs an invariant D_n",
        ));
    }
    let n = w.n();
    let level = depth + k - 1;
    matrix::check_dim(n, level, cfg)?;
    let rep = matrix::to_matrix(w, k, cfg)?;
    let t = tower_matrix(&rep.entries, n, k, depth);
    let block = n.pow(k as u32 - 1);
    let mut entries = Vec::new();
    for alpha in Word::all(n, depth) {
        let start = alpha.index(n) * block;
        let cols = t.columns(start, block);
        // diagonal of T P_α T†
        let diag: BTreeMap<usize, f64> = (0..t.nrows())
            .map(|g| (g, cols.row(g).iter().map(|c| c.norm_sqr()).sum::<f64>()))
            .collect();
        let images = diag
            .iter()
            .filter(|(_, &c)| (c - 1.0).abs() <= cfg.eps)
            .map(|(&g, _)| Word::from_index(g, n, level))
            .collect();
        let fractional = diag
            .values()
            .any(|&c| c.abs() > cfg.eps && (c - 1.0).abs() > cfg.eps);
        let weights = fractional.then(|| {
            diag.iter()
                .filter(|(_, &c)| c.abs() > cfg.eps)
                .map(|(&g, &c)| (Word::from_index(g, n, level), c))
                .collect()
        });
        entries.push(CylinderEntry {
            alpha,
            images,
            weights,
        });
    }
    Ok(CylinderMap { depth, k, entries })
}

/// Span of `λ_z(P_α)` over `|α| = k`, as vectors of level-`k` matrices.
pub fn diagonal_image_span(z: &Element, k: usize, cfg: &Config) -> Result<Subspace> {
    let n = z.n();
    let dim = matrix::check_dim(n, k, cfg)?;
    let mut s = Subspace::new(dim * dim, cfg.eps);
    for alpha in Word::all(n, k) {
        let img = lambda_apply(z, &Element::projection(n, alpha.letters()), cfg)?;
        s.push(&vectorize(&matrix::to_matrix(&img, k, cfg)?.entries))?;
    }
    Ok(s)
}

/// Span of the products `a_0 φ(a_1) ⋯ φ^{k−1}(a_{k−1})` with each `a_i`
/// running over `z P_j z*`.
pub fn product_form_span(z: &Element, k: usize, cfg: &Config) -> Result<Subspace> {
    check_level_one(z, "z")?;
    let n = z.n();
    let dim = matrix::check_dim(n, k, cfg)?;
    let zm = matrix::to_matrix(z, 1, cfg)?.entries;
    let factors: Vec<CMat> = (0..n)
        .map(|j| &zm * level_one_projection(n, j) * zm.adjoint())
        .collect();
    let mut s = Subspace::new(dim * dim, cfg.eps);
    for word in Word::all(n, k) {
        // φ^i(a) = 1^{⊗i} ⊗ a, so the product is a plain tensor product
        let mut prod = CMat::identity(1, 1);
        for &l in word.letters() {
            prod = prod.kronecker(&factors[l as usize - 1]);
        }
        s.push(&vectorize(&prod))?;
    }
    Ok(s)
}

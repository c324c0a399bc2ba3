//! The correspondence `u ↦ λ_u`, `λ_u(S_i) = u S_i`, between unitaries and
//! unital endomorphisms of `O_n`, together with permutation unitaries and the
//! test for commuting with every Bogolyubov automorphism.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::element::{Element, Term, C64};
use crate::error::{Error, Result};
use crate::matrix::{self, max_abs, CMat};
use crate::random::{haar_unitary, rng_from_seed};
use crate::subspace::Subspace;
use crate::word::Word;

/// Largest `k` for which the `k!` position permutations are enumerated.
pub const MAX_INDUCED_K: usize = 10;

/// Applies `λ_u` using `λ_u(S_α S_β*) = u_{|α|} S_α S_β* u_{|β|}*`.
///
/// `u` is assumed unitary; no check is made here.
pub fn lambda_apply(u: &Element, x: &Element, cfg: &Config) -> Result<Element> {
    if u.n() != x.n() {
        return Err(Error::usage(format!(
            "λ_u with u in O_{} applied to an element of O_{}",
            u.n(),
            x.n()
        )));
    }
    let n = x.n();
    // group terms by (|α|, |β|) so each block costs two products
    let mut blocks: BTreeMap<(usize, usize), Vec<Term>> = BTreeMap::new();
    for t in x.terms() {
        blocks.entry((t.alpha.len(), t.beta.len())).or_default().push(t);
    }
    let mut towers: BTreeMap<usize, Element> = BTreeMap::new();
    towers.insert(0, Element::one(n));
    let mut parts = Vec::with_capacity(blocks.len());
    for ((la, lb), terms) in blocks {
        for len in [la, lb] {
            if let std::collections::btree_map::Entry::Vacant(e) = towers.entry(len) {
                e.insert(u.tower(len, cfg)?);
            }
        }
        let block = Element::from_terms(n, terms, 0.0)?;
        let left = towers[&la].mul(&block, cfg)?;
        parts.push(left.mul(&towers[&lb].adjoint(), cfg)?);
    }
    Element::sum(n, parts.iter(), cfg)
}

/// Images of the generators under `λ_u`.
pub fn generator_images(u: &Element, cfg: &Config) -> Result<Vec<Element>> {
    (1..=u.n() as u16)
        .map(|i| u.mul(&Element::generator(u.n(), i), cfg))
        .collect()
}

/// Recovers `u = Σ_i ρ(S_i) S_i*` from the images of the generators after
/// checking the Cuntz relations on them.
pub fn unitary_of_endo(images: &[Element], cfg: &Config) -> Result<Element> {
    let n = images.len();
    if n < 2 {
        return Err(Error::domain("need the images of at least two generators"));
    }
    if let Some(bad) = images.iter().find(|x| x.n() != n) {
        return Err(Error::usage(format!(
            "{n} images given but one lives in O_{}",
            bad.n()
        )));
    }
    let one = Element::one(n);
    let zero = Element::zero(n);
    for (i, a) in images.iter().enumerate() {
        for (j, b) in images.iter().enumerate() {
            let prod = a.adjoint().mul(b, cfg)?;
            let target = if i == j { &one } else { &zero };
            if !prod.equals_within(target, cfg.eps) {
                return Err(Error::domain(format!(
                    "images violate ρ(S_{})*ρ(S_{}) = {}",
                    i + 1,
                    j + 1,
                    if i == j { "1" } else { "0" }
                )));
            }
        }
    }
    let ranges: Vec<Element> = images
        .iter()
        .map(|a| a.mul(&a.adjoint(), cfg))
        .collect::<Result<_>>()?;
    if !Element::sum(n, ranges.iter(), cfg)?.equals_within(&one, cfg.eps) {
        return Err(Error::domain("images violate Σ_i ρ(S_i)ρ(S_i)* = 1"));
    }
    let parts: Vec<Element> = images
        .iter()
        .enumerate()
        .map(|(i, a)| a.mul(&Element::generator(n, i as u16 + 1).adjoint(), cfg))
        .collect::<Result<_>>()?;
    Element::sum(n, parts.iter(), cfg)
}

/// Unitary of `λ_u ∘ λ_w`, namely `λ_u(w) u`.
pub fn compose_endos(u: &Element, w: &Element, cfg: &Config) -> Result<Element> {
    lambda_apply(u, w, cfg)?.mul(u, cfg)
}

/// A bijection of `W_n^k`, stored as the target index of every source index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationMap {
    n: usize,
    k: usize,
    targets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PermutationMapJson {
    n: usize,
    k: usize,
    pairs: Vec<(Vec<u16>, Vec<u16>)>,
}

impl PermutationMap {
    /// Builds the map from `(source, target)` pairs covering all of `W_n^k`.
    pub fn new(n: usize, k: usize, pairs: &[(Word, Word)]) -> Result<Self> {
        let size = n.pow(k as u32);
        let mut targets = vec![usize::MAX; size];
        let mut hit = vec![false; size];
        for (src, dst) in pairs {
            for w in [src, dst] {
                Word::new(w.letters().to_vec(), n)?;
                if w.len() != k {
                    return Err(Error::domain(format!("word {w} does not have length {k}")));
                }
            }
            let (s, d) = (src.index(n), dst.index(n));
            if targets[s] != usize::MAX {
                return Err(Error::domain(format!("source {src} listed twice")));
            }
            if hit[d] {
                return Err(Error::domain(format!("target {dst} hit twice: not a bijection")));
            }
            targets[s] = d;
            hit[d] = true;
        }
        if let Some(missing) = targets.iter().position(|&t| t == usize::MAX) {
            return Err(Error::domain(format!(
                "source {} has no image",
                Word::from_index(missing, n, k)
            )));
        }
        Ok(PermutationMap { n, k, targets })
    }

    pub fn from_fn(n: usize, k: usize, f: impl Fn(&Word) -> Word) -> Result<Self> {
        let pairs: Vec<(Word, Word)> = Word::all(n, k)
            .map(|w| {
                let t = f(&w);
                (w, t)
            })
            .collect();
        Self::new(n, k, &pairs)
    }

    pub fn identity(n: usize, k: usize) -> Self {
        PermutationMap {
            n,
            k,
            targets: (0..n.pow(k as u32)).collect(),
        }
    }

    /// Every bijection of `W_n^k`; only sensible for tiny `n^k`.
    pub fn all(n: usize, k: usize) -> impl Iterator<Item = PermutationMap> {
        let size = n.pow(k as u32);
        (0..size)
            .permutations(size)
            .map(move |targets| PermutationMap { n, k, targets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn apply(&self, w: &Word) -> Word {
        Word::from_index(self.targets[w.index(self.n)], self.n, self.k)
    }

    pub fn pairs(&self) -> Vec<(Word, Word)> {
        Word::all(self.n, self.k)
            .map(|w| {
                let t = self.apply(&w);
                (w, t)
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pairs = self
            .pairs()
            .into_iter()
            .map(|(a, b)| (a.letters().to_vec(), b.letters().to_vec()))
            .collect();
        serde_json::to_value(PermutationMapJson {
            n: self.n,
            k: self.k,
            pairs,
        })
        .expect("permutation map serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: PermutationMapJson = serde_json::from_str(s)?;
        if raw.n < 2 {
            return Err(Error::Parse(format!("n must be at least 2, got {}", raw.n)));
        }
        let pairs: Vec<(Word, Word)> = raw
            .pairs
            .into_iter()
            .map(|(a, b)| Ok((Word::new(a, raw.n)?, Word::new(b, raw.n)?)))
            .collect::<Result<_>>()
            .map_err(|e: Error| Error::Parse(e.to_string()))?;
        Self::new(raw.n, raw.k, &pairs).map_err(|e| Error::Parse(e.to_string()))
    }

    fn matrix(&self) -> CMat {
        let dim = self.targets.len();
        let mut m = CMat::zeros(dim, dim);
        for (src, &dst) in self.targets.iter().enumerate() {
            m[(dst, src)] = C64::new(1.0, 0.0);
        }
        m
    }
}

/// `Σ_α S_{σ(α)} S_α*`.
pub fn permutation_unitary(p: &PermutationMap) -> Element {
    let terms = p
        .pairs()
        .into_iter()
        .map(|(src, dst)| Term::new(C64::new(1.0, 0.0), dst, src));
    Element::from_terms(p.n, terms, 0.0).expect("permutation words are valid")
}

/// Reads `u ∈ F_n^k` as a permutation unitary when every column holds a
/// single entry equal to 1 within `eps`.
pub fn as_permutation(u: &Element, k: usize, cfg: &Config) -> Result<Option<PermutationMap>> {
    let rep = matrix::to_matrix(u, k, cfg)?;
    let n = u.n();
    let mut pairs = Vec::with_capacity(rep.dim());
    for col in 0..rep.dim() {
        let mut target = None;
        for row in 0..rep.dim() {
            let c = rep.entries[(row, col)];
            if (c - C64::new(1.0, 0.0)).norm() <= cfg.eps {
                if target.is_some() {
                    return Ok(None);
                }
                target = Some(row);
            } else if c.norm() > cfg.eps {
                return Ok(None);
            }
        }
        match target {
            Some(row) => pairs.push((Word::from_index(col, n, k), Word::from_index(row, n, k))),
            None => return Ok(None),
        }
    }
    Ok(PermutationMap::new(n, k, &pairs).ok())
}

/// A position permutation `ω ∈ Sym(k)` acting by
/// `σ(α) = (α_{ω(1)}, …, α_{ω(k)})`. `omega` is stored 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedPermutation {
    pub k: usize,
    pub omega: Vec<usize>,
}

impl InducedPermutation {
    pub fn identity(k: usize) -> Self {
        InducedPermutation {
            k,
            omega: (1..=k).collect(),
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        let letters = w.letters();
        Word::from_vec(self.omega.iter().map(|&p| letters[p - 1]).collect())
    }

    pub fn to_map(&self, n: usize) -> PermutationMap {
        PermutationMap::from_fn(n, self.k, |w| self.apply(w)).expect("position permutations are bijective")
    }

    /// All of `Sym(k)` in lexicographic order, identity first.
    pub fn all(k: usize) -> impl Iterator<Item = InducedPermutation> {
        (1..=k)
            .permutations(k)
            .map(move |omega| InducedPermutation { k, omega })
    }
}

/// Searches `Sym(k)` for an `ω` inducing `p`.
pub fn detect_induced(p: &PermutationMap) -> Result<Option<InducedPermutation>> {
    if p.k > MAX_INDUCED_K {
        return Err(Error::resource(
            "induced-permutation search (k)",
            p.k,
            MAX_INDUCED_K,
        ));
    }
    let words: Vec<Word> = Word::all(p.n, p.k).collect();
    Ok(InducedPermutation::all(p.k).find(|cand| words.iter().all(|w| p.apply(w) == cand.apply(w))))
}

/// Outcome of [`weyl_commutation_test`].
#[derive(Clone, Debug, Serialize)]
pub struct WeylReport {
    /// Verdict of the projection onto the induced-permutation span.
    pub commutes: bool,
    /// Frobenius distance from `u` to that span.
    pub residual: f64,
    pub span_dim: usize,
    pub seed: u64,
    pub random_trials: usize,
    /// Whether the randomized `z^{⊗k} u = u z^{⊗k}` checks agree with the verdict.
    pub random_agrees: bool,
}

const WEYL_RANDOM_TRIALS: usize = 10;

/// Decides whether `λ_u` commutes with all Bogolyubov automorphisms by
/// projecting `u` onto the span of the `k!` induced-permutation unitaries.
pub fn weyl_commutation_test(u: &Element, k: usize, cfg: &Config, seed: u64) -> Result<WeylReport> {
    if k > MAX_INDUCED_K {
        return Err(Error::resource("Weyl test (k)", k, MAX_INDUCED_K));
    }
    let n = u.n();
    let rep = matrix::to_matrix(u, k, cfg)?;
    let ambient = rep.dim() * rep.dim();
    let mut span = Subspace::new(ambient, cfg.eps);
    for omega in InducedPermutation::all(k) {
        span.push(&matrix::vectorize(&omega.to_map(n).matrix()))?;
    }
    let v = matrix::vectorize(&rep.entries);
    let residual = span.residual(&v)?.norm();
    let commutes = residual <= cfg.eps;

    let mut rng = rng_from_seed(seed);
    let scale = max_abs(&rep.entries).max(1.0) * rep.dim() as f64;
    let mut all_commute = true;
    for _ in 0..WEYL_RANDOM_TRIALS {
        let z = haar_unitary(n, &mut rng);
        let mut zk = z.clone();
        for _ in 1..k {
            zk = zk.kronecker(&z);
        }
        let comm = &zk * &rep.entries - &rep.entries * &zk;
        if max_abs(&comm) > cfg.eps * scale {
            all_commute = false;
        }
    }
    Ok(WeylReport {
        commutes,
        residual,
        span_dim: span.dim(),
        seed,
        random_trials: WEYL_RANDOM_TRIALS,
        random_agrees: all_commute == commutes,
    })
}

/// Finite-level content of "λ_u commutes with the gauge action": `u` has
/// only degree-0 terms.
pub fn gauge_commutation_test(u: &Element) -> bool {
    u.is_degree_zero()
}

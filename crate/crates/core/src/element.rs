//! Finite linear combinations of reduced words `S_α S_β*` in the algebraic
//! part of `O_n`, with products reduced through the Cuntz relations
//! `S_i* S_j = δ_ij` and `Σ_i S_i S_i* = 1`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_complex::Complex64;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::word::Word;

pub type C64 = Complex64;

/// `coeff · S_α S_β*`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: C64,
    pub alpha: Word,
    pub beta: Word,
}

impl Term {
    pub fn new(coeff: C64, alpha: Word, beta: Word) -> Self {
        Term { coeff, alpha, beta }
    }

    /// Gauge degree `|α| − |β|`.
    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }
}

/// Reduces `(S_{α1} S_{β1}*)(S_{α2} S_{β2}*)` to a single word or zero.
pub fn reduce_word_product(t1: &Term, t2: &Term) -> Option<Term> {
    let coeff = t1.coeff * t2.coeff;
    if let Some(mu) = t2.alpha.strip_prefix(&t1.beta) {
        // S_β1* S_{β1 μ} = S_μ
        return Some(Term::new(coeff, t1.alpha.concat(&mu), t2.beta.clone()));
    }
    if let Some(nu) = t1.beta.strip_prefix(&t2.alpha) {
        // S_{α2 ν}* S_α2 = S_ν*
        return Some(Term::new(coeff, t1.alpha.clone(), t2.beta.concat(&nu)));
    }
    None
}

/// Element of the algebraic part of `O_n`.
///
/// Terms stay at the length they were produced with; no automatic raising or
/// lowering happens. Compare elements with [`Element::equals_within`], which
/// aligns both sides on a common profile first.
#[derive(Clone, PartialEq)]
pub struct Element {
    n: usize,
    terms: BTreeMap<(Word, Word), C64>,
}

impl Element {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 2, "O_n needs n >= 2, got {n}");
        Element {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, C64::new(1.0, 0.0))
    }

    pub fn scalar(n: usize, c: C64) -> Self {
        let mut e = Self::zero(n);
        if c != C64::new(0.0, 0.0) {
            e.terms.insert((Word::empty(), Word::empty()), c);
        }
        e
    }

    /// The single word `S_α S_β*`.
    ///
    /// # Panics
    ///
    /// Panics if a letter lies outside `1..=n`. Use [`Element::from_terms`]
    /// for unvalidated input.
    pub fn word(n: usize, alpha: &[u16], beta: &[u16]) -> Self {
        Self::term(n, C64::new(1.0, 0.0), alpha, beta)
    }

    /// `c · S_α S_β*`; panics on letters outside `1..=n`.
    pub fn term(n: usize, c: C64, alpha: &[u16], beta: &[u16]) -> Self {
        let alpha = Word::new(alpha.to_vec(), n).expect("invalid alpha");
        let beta = Word::new(beta.to_vec(), n).expect("invalid beta");
        let mut e = Self::zero(n);
        if c != C64::new(0.0, 0.0) {
            e.terms.insert((alpha, beta), c);
        }
        e
    }

    /// Generator `S_i`.
    pub fn generator(n: usize, i: u16) -> Self {
        Self::word(n, &[i], &[])
    }

    /// Range projection `P_α = S_α S_α*`.
    pub fn projection(n: usize, alpha: &[u16]) -> Self {
        Self::word(n, alpha, alpha)
    }

    /// Builds an element from terms, merging repeated keys and dropping
    /// coefficients of modulus at most `eps`.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = Term>, eps: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("O_n needs n >= 2, got {n}")));
        }
        let mut acc: HashMap<(Word, Word), C64> = HashMap::new();
        for t in terms {
            Word::new(t.alpha.letters().to_vec(), n)?;
            Word::new(t.beta.letters().to_vec(), n)?;
            *acc.entry((t.alpha, t.beta)).or_default() += t.coeff;
        }
        Ok(Self::canonical(n, acc, eps))
    }

    fn canonical(n: usize, acc: HashMap<(Word, Word), C64>, eps: f64) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| c.norm() > eps).collect();
        Element { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms
            .iter()
            .map(|((a, b), c)| Term::new(*c, a.clone(), b.clone()))
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (&Word, &Word, C64)> {
        self.terms.iter().map(|((a, b), c)| (a, b, *c))
    }

    pub fn coefficient(&self, alpha: &Word, beta: &Word) -> C64 {
        self.terms
            .get(&(alpha.clone(), beta.clone()))
            .copied()
            .unwrap_or_default()
    }

    fn check_same_n(&self, other: &Element) -> Result<()> {
        if self.n != other.n {
            return Err(Error::usage(format!(
                "cannot combine elements of O_{} and O_{}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element, cfg: &Config) -> Result<Element> {
        self.combine(other, C64::new(1.0, 0.0), cfg.eps)
    }

    pub fn sub(&self, other: &Element, cfg: &Config) -> Result<Element> {
        self.combine(other, C64::new(-1.0, 0.0), cfg.eps)
    }

    fn combine(&self, other: &Element, sign: C64, eps: f64) -> Result<Element> {
        self.check_same_n(other)?;
        let mut acc: HashMap<(Word, Word), C64> = self.terms.clone().into_iter().collect();
        for (k, c) in &other.terms {
            *acc.entry(k.clone()).or_default() += sign * c;
        }
        Ok(Self::canonical(self.n, acc, eps))
    }

    /// Sum of a sequence of elements of the same `O_n`.
    pub fn sum<'a>(n: usize, items: impl IntoIterator<Item = &'a Element>, cfg: &Config) -> Result<Element> {
        let mut acc: HashMap<(Word, Word), C64> = HashMap::new();
        for x in items {
            if x.n != n {
                return Err(Error::usage(format!(
                    "cannot add an element of O_{} to O_{n}",
                    x.n
                )));
            }
            for (k, c) in &x.terms {
                *acc.entry(k.clone()).or_default() += c;
            }
            if acc.len() > cfg.max_terms {
                return Err(Error::resource("sum", acc.len(), cfg.max_terms));
            }
        }
        Ok(Self::canonical(n, acc, cfg.eps))
    }

    pub fn scale(&self, c: C64) -> Element {
        if c == C64::new(0.0, 0.0) {
            return Element::zero(self.n);
        }
        Element {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// `c·S_α S_β* ↦ conj(c)·S_β S_α*`.
    pub fn adjoint(&self) -> Element {
        Element {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.conj()))
                .collect(),
        }
    }

    /// Product, reduced word by word.
    pub fn mul(&self, other: &Element, cfg: &Config) -> Result<Element> {
        self.check_same_n(other)?;
        let mut by_alpha: BTreeMap<&Word, Vec<(&Word, C64)>> = BTreeMap::new();
        for ((a, b), c) in &other.terms {
            by_alpha.entry(a).or_default().push((b, *c));
        }
        let mut acc: HashMap<(Word, Word), C64> = HashMap::new();
        for ((a1, b1), c1) in &self.terms {
            // second word starts with β1: S_{α1 μ} S_β2*
            for (&a2, list) in by_alpha.range::<&Word, _>(b1..) {
                if !a2.starts_with(b1) {
                    break;
                }
                let alpha = a1.concat(&a2.suffix_from(b1.len()));
                for (b2, c2) in list {
                    *acc.entry((alpha.clone(), (*b2).clone())).or_default() += c1 * c2;
                }
            }
            // β1 properly extends α2: S_α1 S_{β2 ν}*
            for p in 0..b1.len() {
                let pre = b1.prefix(p);
                if let Some(list) = by_alpha.get(&pre) {
                    let nu = b1.suffix_from(p);
                    for (b2, c2) in list {
                        *acc.entry((a1.clone(), b2.concat(&nu))).or_default() += c1 * c2;
                    }
                }
            }
            if acc.len() > cfg.max_terms {
                return Err(Error::resource("product", acc.len(), cfg.max_terms));
            }
        }
        Ok(Self::canonical(self.n, acc, cfg.eps))
    }

    /// Set of gauge degrees present.
    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms
            .keys()
            .map(|(a, b)| a.len() as i64 - b.len() as i64)
            .collect()
    }

    /// True when every term has gauge degree 0, i.e. the element lies in `F_n`.
    pub fn is_degree_zero(&self) -> bool {
        self.terms.keys().all(|(a, b)| a.len() == b.len())
    }

    /// Longest word length appearing in any term. For elements of `F_n`
    /// this is the minimal `k` with the element in `F_n^k`.
    pub fn level(&self) -> usize {
        self.terms
            .keys()
            .map(|(a, b)| a.len().max(b.len()))
            .max()
            .unwrap_or(0)
    }

    /// Applies the gauge automorphism `γ_t`, scaling each term by `t^{|α|−|β|}`.
    pub fn gauge_action(&self, t: C64) -> Element {
        Element {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| {
                    let d = a.len() as i32 - b.len() as i32;
                    ((a.clone(), b.clone()), c * t.powi(d))
                })
                .collect(),
        }
    }

    /// Rewrites every term of gauge degree `d` so that `|β|` equals
    /// `profile[d]`, using `S_α S_β* = Σ_μ S_{αμ} S_{βμ}*`. Degrees missing
    /// from the profile are left untouched.
    pub fn raise_to_profile(&self, profile: &BTreeMap<i64, usize>, cfg: &Config) -> Result<Element> {
        let acc = raise_map(self.n, self.terms.iter(), profile, cfg.max_terms)?;
        Ok(Self::canonical(self.n, acc, cfg.eps))
    }

    /// Raises to `|β| = len` in every degree present.
    pub fn raise_uniform(&self, len: usize, cfg: &Config) -> Result<Element> {
        let profile = self.degrees().into_iter().map(|d| (d, len)).collect();
        self.raise_to_profile(&profile, cfg)
    }

    /// Largest coefficient difference after aligning both elements on a
    /// common profile per gauge degree.
    pub fn max_abs_diff(&self, other: &Element) -> Result<f64> {
        self.check_same_n(other)?;
        let mut diff: HashMap<(Word, Word), C64> = self.terms.clone().into_iter().collect();
        for (k, c) in &other.terms {
            *diff.entry(k.clone()).or_default() -= c;
        }
        let mut profile: BTreeMap<i64, usize> = BTreeMap::new();
        for (a, b) in diff.keys() {
            let d = a.len() as i64 - b.len() as i64;
            let e = profile.entry(d).or_insert(0);
            *e = (*e).max(b.len());
        }
        let raised = raise_map(self.n, diff.iter(), &profile, usize::MAX)?;
        Ok(raised.values().map(|c| c.norm()).fold(0.0, f64::max))
    }

    /// Equality up to `eps` in every coefficient of the common profile.
    /// Elements of different `O_n` are never equal.
    pub fn equals_within(&self, other: &Element, eps: f64) -> bool {
        match self.max_abs_diff(other) {
            Ok(d) => d <= eps,
            Err(_) => false,
        }
    }

    /// Canonical shift applied `power` times: `φ(x) = Σ_i S_i x S_i*`.
    pub fn phi(&self, power: usize, cfg: &Config) -> Result<Element> {
        if power == 0 {
            return Ok(self.clone());
        }
        let fan = self.n.checked_pow(power as u32).unwrap_or(usize::MAX);
        let needed = fan.saturating_mul(self.terms.len());
        if needed > cfg.max_terms {
            return Err(Error::resource("shift", needed, cfg.max_terms));
        }
        let mut terms = BTreeMap::new();
        for mu in Word::all(self.n, power) {
            for ((a, b), c) in &self.terms {
                terms.insert((mu.concat(a), mu.concat(b)), *c);
            }
        }
        Ok(Element { n: self.n, terms })
    }

    /// `u φ(u) ⋯ φ^{k−1}(u)` without any unitarity check.
    pub fn tower(&self, k: usize, cfg: &Config) -> Result<Element> {
        if k == 0 {
            return Err(Error::domain("tower index must be at least 1"));
        }
        let mut prod = self.clone();
        let mut shifted = self.clone();
        for _ in 1..k {
            shifted = shifted.phi(1, cfg)?;
            prod = prod.mul(&shifted, cfg)?;
        }
        Ok(prod)
    }

    /// Checks `u u* = 1 = u* u` in the word calculus.
    pub fn is_unitary_algebraic(&self, cfg: &Config) -> Result<bool> {
        let one = Element::one(self.n);
        let uu = self.mul(&self.adjoint(), cfg)?;
        let u_u = self.adjoint().mul(self, cfg)?;
        Ok(uu.equals_within(&one, cfg.eps) && u_u.equals_within(&one, cfg.eps))
    }

    /// Splits the element into its homogeneous gauge components.
    pub fn gauge_decompose(&self) -> GaugeDecomposition {
        let mut components: BTreeMap<i64, Element> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let d = a.len() as i64 - b.len() as i64;
            components
                .entry(d)
                .or_insert_with(|| Element::zero(self.n))
                .terms
                .insert((a.clone(), b.clone()), *c);
        }
        GaugeDecomposition {
            n: self.n,
            components,
        }
    }
}

fn raise_map<'a>(
    n: usize,
    terms: impl Iterator<Item = (&'a (Word, Word), &'a C64)>,
    profile: &BTreeMap<i64, usize>,
    cap: usize,
) -> Result<HashMap<(Word, Word), C64>> {
    let mut acc: HashMap<(Word, Word), C64> = HashMap::new();
    for ((a, b), c) in terms {
        let d = a.len() as i64 - b.len() as i64;
        let target = profile.get(&d).copied().unwrap_or(b.len());
        if target < b.len() {
            return Err(Error::domain(format!(
                "cannot raise S_{a}S_{b}* to |β| = {target}: already longer"
            )));
        }
        let extra = target - b.len();
        for mu in Word::all(n, extra) {
            *acc.entry((a.concat(&mu), b.concat(&mu))).or_default() += c;
        }
        if acc.len() > cap {
            return Err(Error::resource("raise", acc.len(), cap));
        }
    }
    Ok(acc)
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(n={}; {self})", self.n)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let coeff = if c.im == 0.0 {
                    format!("{}", c.re)
                } else {
                    format!("({}{:+}i)", c.re, c.im)
                };
                format!("{coeff}·S[{a}]S[{b}]*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homogeneous components of an element, keyed by gauge degree.
#[derive(Clone, Debug)]
pub struct GaugeDecomposition {
    pub n: usize,
    pub components: BTreeMap<i64, Element>,
}

impl GaugeDecomposition {
    pub fn degrees(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    pub fn component(&self, degree: i64) -> Element {
        self.components
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| Element::zero(self.n))
    }

    pub fn sum(&self, cfg: &Config) -> Result<Element> {
        Element::sum(self.n, self.components.values(), cfg)
    }
}

/// Result of [`u_tower`]: the tower and whether the input failed the
/// unitarity check.
#[derive(Clone, Debug)]
pub struct Tower {
    pub value: Element,
    pub non_unitary: bool,
}

/// `u_k = u φ(u) ⋯ φ^{k−1}(u)`, flagging (not rejecting) non-unitary input.
pub fn u_tower(u: &Element, k: usize, cfg: &Config) -> Result<Tower> {
    let unitary = if u.is_degree_zero() {
        crate::matrix::is_unitary(u, u.level(), cfg)?
    } else {
        u.is_unitary_algebraic(cfg)?
    };
    Ok(Tower {
        value: u.tower(k, cfg)?,
        non_unitary: !unitary,
    })
}

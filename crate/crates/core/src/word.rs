use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multi-index `α = (α_1, …, α_k)` over the alphabet `{1, …, n}`.
///
/// The empty word stands for `S_∅ = 1`. Words order lexicographically with a
/// proper prefix sorting before its extensions, which is the order used for
/// matrix rows and columns at a fixed level.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word, checking that every letter lies in `1..=n`.
    pub fn new(letters: Vec<u16>, n: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l as usize > n) {
            return Err(Error::domain(format!(
                "letter {bad} outside 1..={n} in word {letters:?}"
            )));
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_vec(letters: Vec<u16>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// `Some(μ)` when `self = prefix · μ`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    pub fn max_letter(&self) -> u16 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Position of the word among `W_n^k` in lexicographic order.
    pub fn index(&self, n: usize) -> usize {
        self.0.iter().fold(0usize, |acc, &l| acc * n + (l as usize - 1))
    }

    /// Inverse of [`Word::index`] for words of length `k`.
    pub fn from_index(mut idx: usize, n: usize, k: usize) -> Word {
        let mut v = vec![0u16; k];
        for slot in v.iter_mut().rev() {
            *slot = (idx % n) as u16 + 1;
            idx /= n;
        }
        Word(v)
    }

    /// All of `W_n^k` in lexicographic order.
    pub fn all(n: usize, k: usize) -> impl Iterator<Item = Word> {
        let count = n.pow(k as u32);
        (0..count).map(move |i| Word::from_index(i, n, k))
    }

    /// All words of length at most `depth`, shortest first.
    pub fn up_to(n: usize, depth: usize) -> impl Iterator<Item = Word> {
        (0..=depth).flat_map(move |k| Word::all(n, k))
    }
}

impl From<&[u16]> for Word {
    fn from(s: &[u16]) -> Self {
        Word(s.to_vec())
    }
}

impl<const N: usize> From<[u16; N]> for Word {
    fn from(s: [u16; N]) -> Self {
        Word(s.to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let sep = if self.0.iter().any(|&l| l > 9) { "." } else { "" };
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

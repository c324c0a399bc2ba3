//! JSON schemas shared by the library, the CLI and the C ABI.
//!
//! Element: `{"n": 2, "terms": [{"re": …, "im": …, "alpha": [1,1], "beta": [1,2]}, …]}`
//! with 1-based letters; an empty array is the empty word.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::element::{Element, Term, C64};
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub re: f64,
    pub im: f64,
    pub alpha: Vec<u16>,
    pub beta: Vec<u16>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl From<&Element> for ElementJson {
    fn from(x: &Element) -> Self {
        ElementJson {
            n: x.n(),
            terms: x
                .terms()
                .map(|t| TermJson {
                    re: t.coeff.re,
                    im: t.coeff.im,
                    alpha: t.alpha.letters().to_vec(),
                    beta: t.beta.letters().to_vec(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ElementJson> for Element {
    type Error = Error;

    fn try_from(raw: ElementJson) -> Result<Element> {
        if raw.n < 2 {
            return Err(Error::Parse(format!(
                "field `n`: must be at least 2, got {}",
                raw.n
            )));
        }
        let n = raw.n;
        let terms = raw
            .terms
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                let alpha =
                    Word::new(t.alpha, n).map_err(|e| Error::Parse(format!("terms[{i}].alpha: {e}")))?;
                let beta = Word::new(t.beta, n).map_err(|e| Error::Parse(format!("terms[{i}].beta: {e}")))?;
                if !t.re.is_finite() || !t.im.is_finite() {
                    return Err(Error::Parse(format!("terms[{i}]: non-finite coefficient")));
                }
                Ok(Term::new(C64::new(t.re, t.im), alpha, beta))
            })
            .collect::<Result<Vec<_>>>()?;
        // exact merge only: parsing never drops small coefficients
        Element::from_terms(n, terms, 0.0)
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::deserialize(d)?;
        Element::try_from(raw).map_err(serde::de::Error::custom)
    }
}

pub fn element_from_str(s: &str) -> Result<Element> {
    let raw: ElementJson = serde_json::from_str(s)?;
    Element::try_from(raw)
}

pub fn element_to_string(x: &Element) -> String {
    serde_json::to_string_pretty(x).expect("elements serialize")
}

pub fn read_element(path: &Path) -> Result<Element> {
    let text = std::fs::read_to_string(path)?;
    element_from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn write_element(path: &Path, x: &Element) -> Result<()> {
    std::fs::write(path, element_to_string(x) + "\n")?;
    Ok(())
}

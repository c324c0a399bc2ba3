//! Grid scans of standard-MASA invariance over families of `z ∈ U(F_2^1)`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::element::{Element, Term, C64};
use crate::error::{Error, Result};
use crate::masa::{standard_masa_invariance, DecisionReport};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `z_a = a P_1 − b S_1 S_2* + b S_2 S_1* + a P_2`, `b = √(1 − a²)`,
    /// `a ∈ [0, 1]`.
    RealSu2,
    /// `z = e^{iθ}(a P_1 + b S_2 S_1*) − b̄ S_1 S_2* + ā P_2` with
    /// `a = cos t`, `b = e^{iψ} sin t`.
    PhasedSu2,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real-su2" => Ok(Family::RealSu2),
            "phased-su2" => Ok(Family::PhasedSu2),
            other => Err(Error::usage(format!(
                "unknown family `{other}` (expected real-su2 or phased-su2)"
            ))),
        }
    }
}

fn level_one(entries: [[C64; 2]; 2]) -> Element {
    let mut terms = Vec::new();
    for (i, row) in entries.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            terms.push(Term::new(
                c,
                Word::from([i as u16 + 1]),
                Word::from([j as u16 + 1]),
            ));
        }
    }
    Element::from_terms(2, terms, 0.0).expect("letters 1 and 2 are valid for n = 2")
}

/// The real rotation `[[a, −b], [b, a]]` with `b = √(1 − a²)`.
pub fn real_su2_z(a: f64) -> Element {
    let b = (1.0 - a * a).max(0.0).sqrt();
    level_one([
        [C64::new(a, 0.0), C64::new(-b, 0.0)],
        [C64::new(b, 0.0), C64::new(a, 0.0)],
    ])
}

/// `e^{iθ} a S_1S_1* + e^{iθ} b S_2S_1* − b̄ S_1S_2* + ā S_2S_2*`.
pub fn phased_su2_z(theta: f64, a: C64, b: C64) -> Element {
    let ph = C64::from_polar(1.0, theta);
    level_one([[ph * a, -b.conj()], [ph * b, a.conj()]])
}

/// One grid point: named parameters and the unitary `z`.
#[derive(Clone, Debug)]
pub struct GridPoint {
    pub params: BTreeMap<String, f64>,
    pub z: Element,
}

/// Points of `family`. `steps` points per axis; `thetas` only matters for
/// the phased family. Ordering is the nesting θ, t, ψ (outermost first).
pub fn family_grid(family: Family, steps: usize, thetas: &[f64]) -> Result<Vec<GridPoint>> {
    if steps < 2 {
        return Err(Error::usage("a scan needs at least 2 steps per axis"));
    }
    let lin = |i: usize, hi: f64| hi * i as f64 / (steps - 1) as f64;
    match family {
        Family::RealSu2 => Ok((0..steps)
            .map(|i| {
                let a = lin(i, 1.0);
                GridPoint {
                    params: BTreeMap::from([("a".to_string(), a)]),
                    z: real_su2_z(a),
                }
            })
            .collect()),
        Family::PhasedSu2 => {
            let mut out = Vec::with_capacity(thetas.len() * steps * steps);
            for &theta in thetas {
                for i in 0..steps {
                    let t = lin(i, FRAC_PI_2);
                    for j in 0..steps {
                        // ψ covers [0, 2π) without repeating the endpoint
                        let psi = TAU * j as f64 / steps as f64;
                        let a = C64::new(t.cos(), 0.0);
                        let b = C64::from_polar(t.sin(), psi);
                        out.push(GridPoint {
                            params: BTreeMap::from([
                                ("theta".to_string(), theta),
                                ("t".to_string(), t),
                                ("psi".to_string(), psi),
                            ]),
                            z: phased_su2_z(theta, a, b),
                        });
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Real-rotation points at the given values of `a`.
pub fn real_su2_points(values: &[f64]) -> Vec<GridPoint> {
    values
        .iter()
        .map(|&a| GridPoint {
            params: BTreeMap::from([("a".to_string(), a)]),
            z: real_su2_z(a),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub index: usize,
    pub params: BTreeMap<String, f64>,
    pub verdict: bool,
    pub report: DecisionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanTable {
    pub source: String,
    pub eps: f64,
    pub rows: Vec<ScanRow>,
}

impl ScanTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scan tables serialize")
    }

    /// Parameters, verdict, `R` and the dimension chain, one row per point.
    pub fn to_csv(&self) -> Result<String> {
        let names: Vec<String> = self
            .rows
            .first()
            .map(|r| r.params.keys().cloned().collect())
            .unwrap_or_default();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["index".to_string()];
        header.extend(names.iter().cloned());
        header.extend(["verdict", "R", "subspace_dims"].map(String::from));
        w.write_record(&header).map_err(csv_err)?;
        for row in &self.rows {
            let mut rec = vec![row.index.to_string()];
            rec.extend(names.iter().map(|k| row.params[k].to_string()));
            rec.push(row.verdict.to_string());
            rec.push(row.report.r.to_string());
            rec.push(
                row.report
                    .subspace_dims
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
            );
            w.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

/// Runs `standard_masa_invariance(u, z)` at every point in parallel; rows
/// come back in grid order regardless of scheduling.
pub fn scan(u: &Element, points: &[GridPoint], source: &str, cfg: &Config) -> Result<ScanTable> {
    let rows = points
        .par_iter()
        .enumerate()
        .map(|(index, p)| {
            let report = standard_masa_invariance(u, &p.z, cfg)?;
            Ok(ScanRow {
                index,
                params: p.params.clone(),
                verdict: report.preserves_diagonal,
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanTable {
        source: source.to_string(),
        eps: cfg.eps,
        rows,
    })
}

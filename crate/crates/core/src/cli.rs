//! Command-line front end. Exit codes: 0 success, 2 input error,
//! 3 failed internal cross-check.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::config::{Config, DEFAULT_EPS, DEFAULT_MAX_LEVEL, DEFAULT_MAX_TERMS};
use crate::element::Element;
use crate::endo::{
    as_permutation, compose_endos, detect_induced, gauge_commutation_test, weyl_commutation_test,
};
use crate::error::{Error, Result};
use crate::io::{element_from_str, element_to_string, read_element, write_element};
use crate::izumi::{izumi_beta, izumi_unitary, verify_izumi_identities, FiniteAbelianGroup};
use crate::masa::{decide_diagonal_invariance, is_diagonal, oracle_direct_check, restrict_to_diagonal};
use crate::matrix::{is_monomial, is_unitary};
use crate::scan::{family_grid, real_su2_points, scan, Family, GridPoint};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CROSS_CHECK: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cuntz-endo",
    version,
    about = "Endomorphisms of Cuntz algebras and their invariant MASAs"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Zero tolerance for coefficients and membership tests.
    #[arg(long, global = true, env = "CUNTZ_ENDO_EPS", default_value_t = DEFAULT_EPS)]
    eps: f64,
    /// Matrix dimensions are capped at 2^max-level.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: usize,
    /// Seed for randomized checks; recorded in the output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the main JSON output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gauge degrees, level, unitarity, diagonal and monomial tests, Weyl test.
    Analyze { file: PathBuf },
    /// Decide whether λ_w preserves the diagonal.
    Decide {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Cross-check against the brute-force oracle at depth R + 2.
        #[arg(long)]
        oracle: bool,
    },
    /// Standard-MASA invariance over a family of Bogolyubov unitaries.
    MasaScan {
        file: PathBuf,
        #[arg(long, conflicts_with = "z_file", required_unless_present = "z_file")]
        family: Option<String>,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Phases θ for the phased-su2 family.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        theta: Vec<f64>,
        /// Explicit values of a for the real-su2 family, instead of a grid.
        #[arg(long, value_delimiter = ',')]
        a: Vec<f64>,
        #[arg(long)]
        z_file: Option<PathBuf>,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Build the Izumi unitaries for a group such as "2" or "2,2".
    Izumi {
        #[arg(long)]
        group: String,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Unitary of λ_u ∘ λ_w, that is λ_u(w) u.
    Compose { u: PathBuf, w: PathBuf },
    /// Cylinder block map of λ_w on the diagonal.
    Restrict {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

/// Failure of an internal cross-check (exit code 3).
struct CrossCheck(String);

enum Failure {
    Input(Error),
    Check(CrossCheck),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let cfg = Config {
        eps: cli.global.eps,
        max_terms: cli.global.max_terms,
        max_level: cli.global.max_level,
    };
    match dispatch(&cli, &cfg) {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
        Err(Failure::Check(CrossCheck(msg))) => {
            eprintln!("cross-check failed: {msg}");
            EXIT_CROSS_CHECK
        }
    }
}

fn emit(global: &Global, text: &str) -> Result<()> {
    match &global.out {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                // a closed reader (`| head`) is not an input error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("outputs serialize")
}

fn dispatch(cli: &Cli, cfg: &Config) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { file } => {
            let x = read_element(file)?;
            emit(g, &to_json(&analyze(&x, cfg, g.seed)?))?;
        }
        Command::Decide { file, k, oracle } => {
            let w = read_element(file)?;
            let k = k.unwrap_or_else(|| w.level().max(1));
            let report = decide_diagonal_invariance(&w, k, cfg)?;
            emit(g, &report.to_json())?;
            if *oracle {
                let depth = report.r + 2;
                let brute = oracle_direct_check(&w, k, depth, cfg)?;
                if brute != report.preserves_diagonal {
                    return Err(Failure::Check(CrossCheck(format!(
                        "decision says {} but the oracle at depth {depth} says {brute}",
                        report.preserves_diagonal
                    ))));
                }
            }
        }
        Command::MasaScan {
            file,
            family,
            steps,
            theta,
            a,
            z_file,
            csv,
        } => {
            let u = read_element(file)?;
            let (points, source) = match (family, z_file) {
                (_, Some(path)) => {
                    let z = read_element(path)?;
                    (
                        vec![GridPoint {
                            params: Default::default(),
                            z,
                        }],
                        path.display().to_string(),
                    )
                }
                (Some(name), None) => {
                    let fam: Family = name.parse()?;
                    let points = match fam {
                        Family::RealSu2 if !a.is_empty() => real_su2_points(a),
                        _ => family_grid(fam, *steps, theta)?,
                    };
                    (points, name.clone())
                }
                (None, None) => return Err(Error::Usage("give --family or --z-file".into()).into()),
            };
            let table = scan(&u, &points, &source, cfg)?;
            if let Some(path) = csv {
                std::fs::write(path, table.to_csv()?).map_err(Error::from)?;
            }
            emit(g, &table.to_json())?;
        }
        Command::Izumi { group, out_dir } => {
            let group = FiniteAbelianGroup::parse(group)?;
            let report = verify_izumi_identities(&group, cfg)?;
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir).map_err(Error::from)?;
                let v = izumi_unitary(&group);
                let beta = izumi_beta(&group);
                let mut files = vec![("v_lambda.json", v.clone()), ("beta.json", beta.clone())];
                // the composite files are skipped when they exceed the caps
                if let Ok(p) = compose_endos(&v, &beta, cfg) {
                    files.push(("v_lambda_prime.json", p));
                }
                if let Ok(sq) = compose_endos(&v, &v, cfg) {
                    files.push(("v_lambda_squared.json", sq));
                }
                for (name, x) in &files {
                    write_checked(&dir.join(name), x)?;
                }
                std::fs::write(dir.join("report.json"), report.to_json() + "\n").map_err(Error::from)?;
            }
            emit(g, &report.to_json())?;
            if !report.all_hold {
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.holds)
                    .map(|c| c.name.as_str())
                    .collect();
                return Err(Failure::Check(CrossCheck(format!(
                    "identities not verified: {}",
                    failed.join(", ")
                ))));
            }
        }
        Command::Compose { u, w } => {
            let u = read_element(u)?;
            let w = read_element(w)?;
            for (name, x) in [("u", &u), ("w", &w)] {
                if !unitary(x, cfg)? {
                    return Err(Error::Domain(format!("{name} is not unitary")).into());
                }
            }
            let out = compose_endos(&u, &w, cfg)?;
            match &g.out {
                Some(path) => write_checked(path, &out)?,
                None => emit(g, &element_to_string(&out))?,
            }
        }
        Command::Restrict { file, k, depth } => {
            let w = read_element(file)?;
            let k = k.unwrap_or_else(|| w.level().max(1));
            emit(g, &restrict_to_diagonal(&w, k, *depth, cfg)?.to_json())?;
        }
    }
    Ok(())
}

/// Writes an element file and re-reads it; a lossy round trip is a
/// cross-check failure.
fn write_checked(path: &Path, x: &Element) -> CmdResult {
    write_element(path, x)?;
    let back = element_from_str(&std::fs::read_to_string(path).map_err(Error::from)?)?;
    if !back.equals_within(x, 0.0) {
        return Err(Failure::Check(CrossCheck(format!(
            "{} does not re-read to the written element",
            path.display()
        ))));
    }
    Ok(())
}

fn unitary(x: &Element, cfg: &Config) -> Result<bool> {
    if x.is_degree_zero() {
        is_unitary(x, x.level(), cfg)
    } else {
        x.is_unitary_algebraic(cfg)
    }
}

#[derive(Serialize)]
struct Analysis {
    n: usize,
    gauge: Vec<i64>,
    level: usize,
    unitary: bool,
    diagonal: bool,
    /// Only meaningful for degree-0 unitaries.
    monomial: Option<bool>,
    gauge_commutes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    permutation: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    induced_omega: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weyl: Option<crate::endo::WeylReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

fn analyze(x: &Element, cfg: &Config, seed: u64) -> Result<Analysis> {
    let degree_zero = x.is_degree_zero();
    let level = x.level();
    let unitary = unitary(x, cfg)?;
    let mut a = Analysis {
        n: x.n(),
        gauge: x.degrees().into_iter().collect(),
        level,
        unitary,
        diagonal: is_diagonal(x, cfg.eps),
        monomial: None,
        gauge_commutes: gauge_commutation_test(x),
        permutation: None,
        induced_omega: None,
        weyl: None,
        notes: Vec::new(),
    };
    if !(degree_zero && unitary) {
        return Ok(a);
    }
    let k = level.max(1);
    a.monomial = Some(is_monomial(x, k, cfg)?);
    if let Some(p) = as_permutation(x, k, cfg)? {
        match detect_induced(&p) {
            Ok(found) => a.induced_omega = found.map(|w| w.omega),
            Err(e) => a.notes.push(format!("induced search skipped: {e}")),
        }
        a.permutation = Some(p.to_json());
    }
    match weyl_commutation_test(x, k, cfg, seed) {
        Ok(w) => a.weyl = Some(w),
        Err(e) => a.notes.push(format!("Weyl test skipped: {e}")),
    }
    Ok(a)
}

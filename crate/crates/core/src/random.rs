//! Seeded generators for test unitaries. Every generator takes the RNG by
//! reference so callers control reproducibility through a single seed.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::config::Config;
use crate::element::{Element, C64};
use crate::matrix::{from_matrix, CMat, MatrixRep};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed `dim × dim` unitary: QR of a complex Ginibre matrix with
/// the phases of `R`'s diagonal folded back into `Q`.
pub fn haar_unitary(dim: usize, rng: &mut SeededRng) -> CMat {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im) / std::f64::consts::SQRT_2
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random permutation matrix times random diagonal phases.
pub fn monomial_unitary(dim: usize, rng: &mut SeededRng) -> CMat {
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let mut m = CMat::zeros(dim, dim);
    for (col, &row) in perm.iter().enumerate() {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        m[(row, col)] = C64::from_polar(1.0, theta);
    }
    m
}

/// Random permutation matrix.
pub fn permutation_matrix(dim: usize, rng: &mut SeededRng) -> CMat {
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let mut m = CMat::zeros(dim, dim);
    for (col, &row) in perm.iter().enumerate() {
        m[(row, col)] = C64::new(1.0, 0.0);
    }
    m
}

/// Haar-random unitary of `F_n^k` as an element.
pub fn haar_element(n: usize, k: usize, rng: &mut SeededRng, cfg: &Config) -> Element {
    let m = haar_unitary(n.pow(k as u32), rng);
    from_matrix(
        &MatrixRep {
            n,
            level: k,
            entries: m,
        },
        cfg.eps * 1e-6,
    )
}

pub fn monomial_element(n: usize, k: usize, rng: &mut SeededRng, cfg: &Config) -> Element {
    let m = monomial_unitary(n.pow(k as u32), rng);
    from_matrix(
        &MatrixRep {
            n,
            level: k,
            entries: m,
        },
        cfg.eps,
    )
}

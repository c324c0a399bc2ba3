#![allow(dead_code)]

pub mod oracle;

use cuntz_endo::element::{Element, Term, C64};
use cuntz_endo::word::Word;
use cuntz_endo::Config;

pub fn cfg() -> Config {
    Config::default()
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Builds an element from `(coeff, α, β)` triples.
pub fn el(n: usize, terms: &[(C64, &[u16], &[u16])]) -> Element {
    Element::from_terms(
        n,
        terms
            .iter()
            .map(|(k, a, b)| Term::new(*k, Word::from(*a), Word::from(*b))),
        0.0,
    )
    .unwrap()
}

pub fn one() -> C64 {
    c(1.0, 0.0)
}

/// `S_1(S_1S_2* + S_2S_1*)S_1* + P_2`.
pub fn swap_block_u() -> Element {
    el(
        2,
        &[
            (one(), &[1, 1], &[1, 2]),
            (one(), &[1, 2], &[1, 1]),
            (one(), &[2], &[2]),
        ],
    )
}

/// `z_a = a P_1 − b S_1S_2* + b S_2S_1* + a P_2`.
pub fn rotation_z(a: f64) -> Element {
    let b = (1.0 - a * a).max(0.0).sqrt();
    el(
        2,
        &[
            (c(a, 0.0), &[1], &[1]),
            (c(-b, 0.0), &[1], &[2]),
            (c(b, 0.0), &[2], &[1]),
            (c(a, 0.0), &[2], &[2]),
        ],
    )
}

/// `S_1S_1S_1*S_1* + S_1S_2S_2*S_2* + S_2S_2S_2*S_1* + S_2S_1S_1*S_2*`.
pub fn rotated_block_expected() -> Element {
    el(
        2,
        &[
            (one(), &[1, 1], &[1, 1]),
            (one(), &[1, 2], &[2, 2]),
            (one(), &[2, 2], &[1, 2]),
            (one(), &[2, 1], &[2, 1]),
        ],
    )
}

/// `S_1S_1S_1* + S_1S_2S_1*S_2* + S_2S_2*S_2*`.
pub fn mixed_degree_u() -> Element {
    el(
        2,
        &[
            (one(), &[1, 1], &[1]),
            (one(), &[1, 2], &[2, 1]),
            (one(), &[2], &[2, 2]),
        ],
    )
}

pub fn phased_z(theta: f64, a: C64, b: C64) -> Element {
    let ph = C64::from_polar(1.0, theta);
    el(
        2,
        &[
            (ph * a, &[1], &[1]),
            (ph * b, &[2], &[1]),
            (-b.conj(), &[1], &[2]),
            (a.conj(), &[2], &[2]),
        ],
    )
}

/// The level-2 unitary built from two 2×2 unitary rows `(a, b)` and `(c, d)`.
pub fn two_block_w(a: C64, b: C64, cc: C64, d: C64) -> Element {
    el(
        2,
        &[
            (a, &[1, 1], &[1, 1]),
            (b, &[1, 1], &[1, 2]),
            (cc, &[1, 2], &[2, 1]),
            (d, &[1, 2], &[2, 2]),
            (-b.conj(), &[2, 1], &[1, 1]),
            (a.conj(), &[2, 1], &[1, 2]),
            (-d.conj(), &[2, 2], &[2, 1]),
            (cc.conj(), &[2, 2], &[2, 2]),
        ],
    )
}

/// Flip of the two positions at level 2.
pub fn flip_u1() -> Element {
    el(
        2,
        &[
            (one(), &[1, 1], &[1, 1]),
            (one(), &[1, 2], &[2, 1]),
            (one(), &[2, 1], &[1, 2]),
            (one(), &[2, 2], &[2, 2]),
        ],
    )
}

/// `φ(S_1S_2* + S_2S_1*)`.
pub fn shifted_swap_u2() -> Element {
    el(
        2,
        &[
            (one(), &[1, 1], &[1, 2]),
            (one(), &[1, 2], &[1, 1]),
            (one(), &[2, 1], &[2, 2]),
            (one(), &[2, 2], &[2, 1]),
        ],
    )
}

/// `Σ S_l S_j S_i S_j* S_i* S_l*` for `n = 2`.
pub fn induced_k3() -> Element {
    let mut terms = Vec::new();
    for l in 1..=2u16 {
        for j in 1..=2u16 {
            for i in 1..=2u16 {
                terms.push(Term::new(one(), Word::from([l, j, i]), Word::from([l, i, j])));
            }
        }
    }
    Element::from_terms(2, terms, 0.0).unwrap()
}

/// `Σ S_i S_j S_i* S_j*`, the unitary of the canonical shift.
pub fn shift_unitary(n: u16) -> Element {
    let mut terms = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            terms.push(Term::new(one(), Word::from([i, j]), Word::from([j, i])));
        }
    }
    Element::from_terms(n as usize, terms, 0.0).unwrap()
}

/// Five-term form of the Izumi unitary for `ℤ_2`.
pub fn z2_v_lambda_closed_form() -> Element {
    let r = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let s = c(-std::f64::consts::SQRT_2, 0.0);
    el(
        2,
        &[
            (r, &[], &[]),
            (r, &[1], &[2]),
            (r, &[2], &[1]),
            (s, &[1, 2], &[2, 2]),
            (s, &[2, 1], &[2, 1]),
        ],
    )
}

/// Closed form of `v_{λ′}` for `ℤ_2`, first index pair as α, second as β.
pub fn z2_v_lambda_prime_closed_form() -> Element {
    el(
        2,
        &[
            (one(), &[1, 1], &[1, 1]),
            (one(), &[1, 2], &[2, 2]),
            (one(), &[2, 2], &[1, 2]),
            (one(), &[2, 1], &[2, 1]),
        ],
    )
}

/// Closed form of `v_{λ²}` for `ℤ_2` with `S_{ij,kl} = S_iS_jS_k*S_l*`.
pub fn z2_v_lambda_squared_closed_form() -> Element {
    el(
        2,
        &[
            (one(), &[1, 1], &[1, 1]),
            (one(), &[1, 2], &[2, 1]),
            (one(), &[2, 2], &[1, 2]),
            (one(), &[2, 1], &[2, 2]),
        ],
    )
}

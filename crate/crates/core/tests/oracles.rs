//! Library results against the dense reference in `common::oracle`.

mod common;

use common::oracle::{self, Group, M};
use common::*;
use cuntz_endo::element::{Element, Term, C64};
use cuntz_endo::endo::{as_permutation, compose_endos, detect_induced, lambda_apply, weyl_commutation_test};
use cuntz_endo::izumi::{izumi_beta, izumi_unitary, verify_izumi_identities, FiniteAbelianGroup};
use cuntz_endo::masa::{
    conjugate_by_bogolyubov, decide_diagonal_invariance, e_slices, oracle_direct_check, restrict_to_diagonal,
    sufficient_cor42, sufficient_prop45,
};
use cuntz_endo::matrix::to_matrix;
use cuntz_endo::random::{haar_element, rng_from_seed, SeededRng};
use cuntz_endo::word::Word;
use rand::Rng;

fn random_element(n: usize, k: usize, rng: &mut SeededRng) -> Element {
    let terms: Vec<Term> = Word::all(n, k)
        .flat_map(|a| Word::all(n, k).map(move |b| (a.clone(), b)))
        .map(|(a, b)| Term::new(c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), a, b))
        .collect();
    Element::from_terms(n, terms, 0.0).unwrap()
}

fn close(a: &M, b: &M, tol: f64) -> bool {
    a.shape() == b.shape() && oracle::max_abs(&(a - b)) <= tol
}

#[test]
fn matrix_of_product_is_product_of_matrices() {
    let mut rng = rng_from_seed(11);
    for _ in 0..20 {
        let x = random_element(2, 2, &mut rng);
        let y = random_element(2, 1, &mut rng);
        let xy = x.mul(&y, &cfg()).unwrap();
        let lhs = to_matrix(&xy, 2, &cfg()).unwrap().entries;
        assert!(close(&lhs, &(oracle::dense(&x, 2) * oracle::dense(&y, 2)), 1e-12));
    }
}

#[test]
fn slices_reconstruct() {
    let mut rng = rng_from_seed(12);
    for _ in 0..20 {
        let a = random_element(2, 3, &mut rng);
        let s = e_slices(&a, 3, &cfg()).unwrap();
        let mut parts = Vec::new();
        for i in 1..=2u16 {
            for j in 1..=2u16 {
                let unit = Element::word(2, &[i], &[j]).phi(2, &cfg()).unwrap();
                parts.push(s[i as usize - 1][j as usize - 1].mul(&unit, &cfg()).unwrap());
            }
        }
        let back = Element::sum(2, parts.iter(), &cfg()).unwrap();
        assert!(back.max_abs_diff(&a).unwrap() < 1e-12);
    }
}

#[test]
fn lambda_apply_matches_dense_towers() {
    let mut rng = rng_from_seed(13);
    for _ in 0..10 {
        let u = haar_element(2, 2, &mut rng, &cfg());
        let x = random_element(2, 2, &mut rng);
        let got = lambda_apply(&u, &x, &cfg()).unwrap();
        let expected = oracle::lam(&oracle::dense(&u, 2), 2, 2, &oracle::dense(&x, 2), 2);
        assert!(close(
            &to_matrix(&got, 3, &cfg()).unwrap().entries,
            &expected,
            1e-10
        ));
    }
}

#[test]
fn rotated_permutation_is_not_induced() {
    let conj = conjugate_by_bogolyubov(
        &swap_block_u(),
        &rotation_z(std::f64::consts::FRAC_1_SQRT_2),
        &cfg(),
    )
    .unwrap();
    let p = as_permutation(&conj, 2, &cfg()).unwrap().unwrap();
    assert_eq!(detect_induced(&p).unwrap(), None);
    // both elements of Sym(2) by hand: identity and flip
    let words: Vec<Word> = Word::all(2, 2).collect();
    let fixes_all = words.iter().all(|w| p.apply(w) == *w);
    let flips_all = words
        .iter()
        .all(|w| p.apply(w) == Word::from([w.letters()[1], w.letters()[0]]));
    assert!(!fixes_all && !flips_all);
}

fn hook_count_two_rows(k: usize) -> usize {
    // Σ (f^λ)² over partitions of k with at most two rows; f^(k−j, j) by the hook formula
    (0..=k / 2)
        .map(|j| {
            let f = binom(k, j) - if j == 0 { 0 } else { binom(k, j - 1) };
            f * f
        })
        .sum()
}

fn binom(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn induced_span_dimension() {
    assert_eq!(hook_count_two_rows(3), 5);
    let r = weyl_commutation_test(&Element::one(2), 3, &cfg(), 0).unwrap();
    assert_eq!(r.span_dim, 5);
    let r = weyl_commutation_test(&Element::one(2), 4, &cfg(), 0).unwrap();
    assert_eq!(r.span_dim, hook_count_two_rows(4));
    // with n ≥ k all k! position permutations are independent
    let r = weyl_commutation_test(&Element::one(3), 3, &cfg(), 0).unwrap();
    assert_eq!(r.span_dim, 6);
}

#[test]
fn two_block_chain_respects_the_bound() {
    let mut rng = rng_from_seed(14);
    for _ in 0..10 {
        let t: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
        let s: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
        let w = two_block_w(
            C64::from_polar(t.cos(), rng.gen_range(0.0..6.0)),
            C64::from_polar(t.sin(), rng.gen_range(0.0..6.0)),
            C64::from_polar(s.cos(), rng.gen_range(0.0..6.0)),
            C64::from_polar(s.sin(), rng.gen_range(0.0..6.0)),
        );
        let r = decide_diagonal_invariance(&w, 2, &cfg()).unwrap();
        assert!(r.preserves_diagonal);
        assert!(r.r <= 5);
        assert!(r.subspace_dims.windows(2).all(|p| p[0] <= p[1]));
        let last = r.subspace_dims.len() - 1;
        assert_eq!(r.subspace_dims[last], r.subspace_dims[last - 1]);
        // strictly increasing until it stops
        assert!(r.subspace_dims[..last].windows(2).all(|p| p[0] < p[1]));
        assert!(oracle::brute_preserves(
            &oracle::dense(&w, 2),
            2,
            2,
            r.r + 2,
            1e-9
        ));
    }
}

#[test]
fn izumi_spans_differ_at_level_two() {
    let v = oracle::dense(&izumi_unitary(&FiniteAbelianGroup::parse("2").unwrap()), 2);
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..2 {
        let mut p = M::zeros(2, 2);
        p[(i, i)] = c(1.0, 0.0);
        lhs.push(&v * oracle::up(&p, 2, 1, 2) * v.adjoint());
        rhs.push(oracle::eye(2).kronecker(&p));
    }
    let joint: Vec<M> = lhs.iter().chain(rhs.iter()).cloned().collect();
    // equal spans would give rank 2 for the union
    assert!(oracle::rank(&joint, 1e-9) > 2);
    let v_el = izumi_unitary(&FiniteAbelianGroup::parse("2").unwrap());
    assert!(!sufficient_cor42(&v_el, 2, &cfg()).unwrap());
    // first condition of the stronger test already fails: w P_1 w* is not diagonal
    assert!(!oracle::is_diag(&lhs[0], 1e-9));
    assert!(!sufficient_prop45(&v_el, 2, &cfg()).unwrap());
}

#[test]
fn rotation_block_map_by_direct_conjugation() {
    let u = swap_block_u();
    let map = restrict_to_diagonal(&u, 2, 2, &cfg()).unwrap();
    let t = oracle::tower(&oracle::dense(&u, 2), 2, 2, 2);
    for alpha in oracle::words(2, 2) {
        let mut p = M::zeros(4, 4);
        let i = oracle::idx(&alpha, 2);
        p[(i, i)] = c(1.0, 0.0);
        let img = &t * oracle::up(&p, 2, 2, 3) * t.adjoint();
        let expected: Vec<Word> = oracle::words(2, 3)
            .into_iter()
            .filter(|g| (img[(oracle::idx(g, 2), oracle::idx(g, 2))] - c(1.0, 0.0)).norm() < 1e-9)
            .map(|g| Word::from(&g[..]))
            .collect();
        assert_eq!(map.image(&Word::from(&alpha[..])).unwrap(), &expected[..]);
    }
}

#[test]
fn izumi_unitaries_are_unitary() {
    for desc in ["2", "3", "2,2"] {
        let g = FiniteAbelianGroup::parse(desc).unwrap();
        let n = g.order();
        let v = oracle::dense(&izumi_unitary(&g), 2);
        assert!(close(&(&v * v.adjoint()), &oracle::eye(n * n), 1e-12), "{desc}");
    }
}

#[test]
fn z2_beta_is_the_hadamard_matrix() {
    let b = to_matrix(&izumi_beta(&FiniteAbelianGroup::parse("2").unwrap()), 1, &cfg())
        .unwrap()
        .entries;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = M::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]);
    assert!(close(&b, &h, 1e-15));
}

#[test]
fn izumi_identities_for_general_groups() {
    for orders in [vec![2], vec![3], vec![2, 2], vec![4]] {
        let desc = orders.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",");
        let g = FiniteAbelianGroup::parse(&desc).unwrap();
        let og = Group::new(&orders);
        let n = og.n();

        let v = izumi_unitary(&g);
        assert!(close(&oracle::dense(&v, 2), &og.v_lambda(), 1e-12), "{desc} v");
        assert!(
            close(&oracle::dense(&izumi_beta(&g), 1), &og.beta(), 1e-12),
            "{desc} beta"
        );

        let (prime, lp) = oracle::compose(&og.v_lambda(), 2, &og.beta(), 1, n);
        assert_eq!(lp, 2);
        assert!(
            close(&prime, &og.v_lambda_prime(), 1e-10),
            "{desc} prime (oracle)"
        );
        let (square, ls) = oracle::compose(&og.v_lambda(), 2, &og.v_lambda(), 2, n);
        let square_expected = oracle::up(&og.v_lambda_squared(), n, 2, ls);
        assert!(close(&square, &square_expected, 1e-10), "{desc} square (oracle)");

        let lib_prime = compose_endos(&v, &izumi_beta(&g), &cfg()).unwrap();
        assert!(
            close(&oracle::dense(&lib_prime, 2), &og.v_lambda_prime(), 1e-10),
            "{desc} prime"
        );
        let lib_square = compose_endos(&v, &v, &cfg()).unwrap();
        let lib_level = lib_square.level();
        assert!(lib_level <= ls);
        assert!(
            close(&oracle::dense(&lib_square, ls), &square_expected, 1e-10),
            "{desc} square"
        );

        let report = verify_izumi_identities(&g, &cfg()).unwrap();
        assert!(report.all_hold, "{desc}: {}", report.to_json());
        assert!(!oracle::brute_preserves(&og.v_lambda(), n, 2, 1, 1e-9));
        assert!(!oracle_direct_check(&v, 2, 1, &cfg()).unwrap());
    }
}

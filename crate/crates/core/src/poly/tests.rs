use proptest::prelude::*;

use super::rational::{factorial, int, rat};
use super::*;

fn x(dim: usize, i: usize) -> Polynomial {
    Polynomial::variable(dim, i).unwrap()
}

fn mono(exps: &[u32], c: Rational) -> Polynomial {
    Polynomial::monomial(MultiIndex::new(exps.to_vec()), c)
}

#[test]
fn add_cancels_and_merges() {
    let p = mono(&[2, 0], int(1));
    let q = mono(&[2, 0], int(-1));
    assert!(poly_add(&p, &q).unwrap().is_zero());

    let s = poly_add(&x(2, 0), &x(2, 1)).unwrap();
    assert_eq!(s.len(), 2);
    assert_eq!(s.to_string(), "x1 + x2");

    let half = mono(&[1, 1], rat(1, 2));
    assert_eq!(poly_add(&half, &half).unwrap(), mono(&[1, 1], int(1)));
}

#[test]
fn dimension_mismatch_is_an_error() {
    assert!(matches!(
        poly_add(&x(2, 0), &x(3, 0)),
        Err(Error::DimensionMismatch { expected: 2, found: 3 })
    ));
    assert!(poly_mul(&x(2, 0), &x(3, 0), None).is_err());
    assert!(Polynomial::variable(2, 2).is_err());
}

#[test]
fn mul_examples() {
    let sum = poly_add(&x(2, 0), &x(2, 1)).unwrap();
    let diff = x(2, 0).checked_sub(&x(2, 1)).unwrap();
    let expected = mono(&[2, 0], int(1)).checked_sub(&mono(&[0, 2], int(1))).unwrap();
    assert_eq!(poly_mul(&sum, &diff, None).unwrap(), expected);

    let sq = mono(&[2], int(1));
    assert!(poly_mul(&sq, &sq, Some(3)).unwrap().is_zero());

    let one_plus = poly_add(&Polynomial::one(1), &x(1, 0)).unwrap();
    let expected = poly_add(&Polynomial::one(1), &mono(&[1], int(2))).unwrap();
    assert_eq!(poly_mul(&one_plus, &one_plus, Some(1)).unwrap(), expected);
}

#[test]
fn laplacian_examples() {
    assert_eq!(laplacian(&mono(&[2, 0], int(1))), Polynomial::constant(2, int(2)));
    assert!(laplacian(&mono(&[1, 1], int(1))).is_zero());
    assert_eq!(laplacian(&mono(&[3, 0], int(1))), mono(&[1, 0], int(6)));
}

/// `(sum d^2)^k |_0 g(X,X)^k = 4^k k! [m/2 + k - 1]_k`.
#[test]
fn laplacian_power_of_norm_power() {
    for m in 1..=6usize {
        let g = Polynomial::norm_squared(m);
        let mut gk = Polynomial::one(m);
        for k in 0..=4u32 {
            let value = gk.laplacian_power(k).eval_at_zero();
            let half_m = rat(m as i64, 2);
            let expected = rational::pow(&int(4), k)
                * factorial(k as u64)
                * falling_factorial(&(half_m + int(k as i64 - 1)), k as i64);
            assert_eq!(value, expected, "m={m} k={k}");
            gk = gk.checked_mul(&g, None).unwrap();
        }
    }
}

#[test]
fn eval_at_zero_examples() {
    let p = poly_add(&Polynomial::constant(1, int(3)), &x(1, 0)).unwrap();
    assert_eq!(eval_at_zero(&p), int(3));
    assert_eq!(eval_at_zero(&mono(&[2], int(1))), int(0));

    let g = Polynomial::norm_squared(2);
    let g2 = g.checked_mul(&g, None).unwrap();
    assert_eq!(g2.laplacian().laplacian().eval_at_zero(), int(64));
}

#[test]
fn exp_truncated_examples() {
    let e = exp_truncated(&x(1, 0), 2).unwrap();
    let expected = Polynomial::from_terms(1, [(vec![0], int(1)), (vec![1], int(1)), (vec![2], rat(1, 2))]).unwrap();
    assert_eq!(e, expected);

    assert_eq!(exp_truncated(&Polynomial::zero(3), 6).unwrap(), Polynomial::one(3));

    let c = Polynomial::constant(2, int(1));
    assert!(matches!(exp_truncated(&c, 2), Err(Error::NonzeroConstantTerm)));
}

/// The round sphere's generating series `(1 - g(X,X))^{-(m-1)/2}` from its
/// Jacobi traces `tr J^r = (m-1) g(X,X)^r`.
#[test]
fn exp_truncated_reproduces_newton_series() {
    for m in 2..=5usize {
        let k_max = 4u32;
        let g = Polynomial::norm_squared(m);
        let mut log_series = Polynomial::zero(m);
        let mut g_pow = Polynomial::one(m);
        for r in 1..=k_max {
            g_pow = g_pow.checked_mul(&g, None).unwrap();
            log_series.add_scaled(&g_pow, &rat(m as i64 - 1, 2 * r as i64)).unwrap();
        }
        let e = exp_truncated(&log_series, 2 * k_max).unwrap();

        let x = rat(-(m as i64 - 1), 2);
        let mut expected = Polynomial::zero(m);
        let mut g_pow = Polynomial::one(m);
        for j in 0..=k_max as i64 {
            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
            expected.add_scaled(&g_pow, &(sign * gen_binomial(&x, j))).unwrap();
            g_pow = g_pow.checked_mul(&g, None).unwrap();
        }
        assert_eq!(e, expected, "m={m}");
    }
}

#[test]
fn homogeneity_queries() {
    let g = Polynomial::norm_squared(3);
    assert_eq!(g.homogeneous_degree(), Some(2));
    let mixed = poly_add(&g, &x(3, 0)).unwrap();
    assert_eq!(mixed.homogeneous_degree(), None);
    assert_eq!(mixed.homogeneous_part(1), x(3, 0));
    assert_eq!(mixed.degree(), Some(2));
    assert_eq!(mixed.min_degree(), Some(1));
    assert_eq!(Polynomial::zero(3).degree(), None);
}

#[test]
fn evaluation() {
    let p = Polynomial::from_terms(2, [(vec![2, 1], rat(1, 2)), (vec![0, 0], int(3))]).unwrap();
    assert_eq!(p.eval(&[int(2), int(3)]).unwrap(), int(9));
    assert!((p.eval_f64(&[2.0, 3.0]).unwrap() - 9.0).abs() < 1e-12);
    assert!(p.eval(&[int(1)]).is_err());
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly3() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=3, 3), coeff()), 0..7)
        .prop_map(|terms| Polynomial::from_terms(3, terms).unwrap())
}

fn homogeneous3(degree: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0..=degree, 0..=degree, coeff()), 1..6).prop_map(move |raw| {
        let terms = raw.into_iter().filter_map(|(a, b, c)| {
            (a + b <= degree).then(|| (vec![a, b, degree - a - b], c))
        });
        Polynomial::from_terms(3, terms).unwrap()
    })
}

proptest! {
    #[test]
    fn laplacian_is_linear(p in poly3(), q in poly3(), a in coeff(), b in coeff()) {
        let mut combo = p.scale(&a);
        combo.add_scaled(&q, &b).unwrap();
        let mut expected = p.laplacian().scale(&a);
        expected.add_scaled(&q.laplacian(), &b).unwrap();
        prop_assert_eq!(combo.laplacian(), expected);
    }

    #[test]
    fn odd_homogeneous_integrates_to_zero(p in homogeneous3(5), times in 0u32..4) {
        prop_assert!(p.laplacian_power(times).eval_at_zero().is_zero());
    }

    #[test]
    fn exp_matches_power_series(p in poly3(), max_degree in 0u32..=5) {
        let p = p.checked_sub(&Polynomial::constant(3, p.eval_at_zero())).unwrap();
        let mut naive = Polynomial::one(3);
        let mut power = Polynomial::one(3);
        for j in 1..=max_degree {
            power = power.checked_mul(&p, Some(max_degree)).unwrap();
            naive.add_scaled(&power, &(int(1) / factorial(j as u64))).unwrap();
        }
        prop_assert_eq!(p.exp_truncated(max_degree).unwrap(), naive);
    }

    #[test]
    fn multiplication_commutes(p in poly3(), q in poly3()) {
        prop_assert_eq!(p.checked_mul(&q, Some(4)).unwrap(), q.checked_mul(&p, Some(4)).unwrap());
    }
}

use proptest::prelude::*;
use uncia::series::{lemma_coefficient, PowerSeries, Sign};
use uncia::{rat, ratio, Rational};

fn any_rational() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..6).prop_map(|(n, d)| ratio(n, d))
}

fn any_series() -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(any_rational(), 1..=17).prop_map(|c| PowerSeries::from_coeffs(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_commutes(a in any_series(), b in any_series()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn mul_associates(a in any_series(), b in any_series(), c in any_series()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn mul_distributes(a in any_series(), b in any_series(), c in any_series()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn add_commutes_and_orders(a in any_series(), b in any_series()) {
        let s = &a + &b;
        prop_assert_eq!(s.order(), a.order().min(b.order()));
        prop_assert_eq!(s, &b + &a);
    }

    #[test]
    fn binomial_series_multiplicative(a in any_rational(), b in any_rational(), order in 0usize..14) {
        let lhs = &PowerSeries::binomial_series(&a, order, Sign::Plus)
            * &PowerSeries::binomial_series(&b, order, Sign::Plus);
        prop_assert_eq!(lhs, PowerSeries::binomial_series(&(&a + &b), order, Sign::Plus));
    }

    #[test]
    fn reciprocal_inverts(a in any_series()) {
        prop_assume!(a.coeffs()[0] != rat(0));
        let inv = a.reciprocal().unwrap();
        prop_assert_eq!(&a * &inv, PowerSeries::one(a.order()));
    }
}

#[test]
fn binomial_series_multiplicative_pairs() {
    let values = [
        ratio(1, 2),
        ratio(-1, 2),
        ratio(5, 3),
        ratio(-7, 4),
        rat(3),
        rat(-2),
        ratio(2, 5),
    ];
    let mut pairs = 0;
    for a in &values {
        for b in &values {
            let lhs = &PowerSeries::binomial_series(a, 12, Sign::Minus)
                * &PowerSeries::binomial_series(b, 12, Sign::Minus);
            assert_eq!(lhs, PowerSeries::binomial_series(&(a + b), 12, Sign::Minus));
            pairs += 1;
        }
    }
    assert!(pairs >= 20);
}

#[test]
fn log_times_one_minus_z() {
    let n = 20;
    let p = &PowerSeries::log_geometric(n) * &PowerSeries::binomial_series(&rat(1), n, Sign::Minus);
    assert_eq!(p.coefficient(1).unwrap(), &rat(1));
    for k in 2..=n as i64 {
        assert_eq!(p.coefficient(k).unwrap(), &(ratio(1, k) - ratio(1, k - 1)));
    }
}

/// `x^p / (1-x)^(q+1)` by multiplying `q + 1` geometric series together.
fn brute_force_lemma_series(p: i64, q: i64, order: usize) -> PowerSeries {
    let geom = PowerSeries::geometric(order);
    let mut s = PowerSeries::one(order);
    for _ in 0..=q {
        s = &s * &geom;
    }
    s.shift(p).unwrap()
}

#[test]
fn lemma_matches_expansions() {
    for p in 0..=8 {
        for q in 0..=8 {
            let flipped = PowerSeries::binomial_series(&rat(-q - 1), 24, Sign::Minus)
                .shift(p)
                .unwrap();
            let brute = brute_force_lemma_series(p, q, 24);
            for n in p..=24 {
                let v = lemma_coefficient(p, &rat(q), n);
                assert_eq!(&v, flipped.coefficient(n).unwrap(), "p={p} q={q} n={n}");
                assert_eq!(&v, brute.coefficient(n).unwrap(), "p={p} q={q} n={n}");
            }
        }
    }
}

#[test]
fn lemma_examples_by_expansion() {
    assert_eq!(
        brute_force_lemma_series(2, 3, 8).coefficient(5).unwrap(),
        &rat(20)
    );
    assert_eq!(
        brute_force_lemma_series(2, 5, 8).coefficient(6).unwrap(),
        &rat(126)
    );
}

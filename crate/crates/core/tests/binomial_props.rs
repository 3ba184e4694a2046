use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;
use uncia::binomial::{binom, binom_int};
use uncia::{rat, ratio, Rational};

fn any_rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..13).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pascal_recurrence(p in any_rational(), q in 1i64..=12) {
        let one = rat(1);
        let lhs = binom(&p, q);
        let rhs = binom(&(&p - &one), q - 1) + binom(&(&p - &one), q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form(p in any_rational(), q in -3i64..=15) {
        let v = binom(&p, q);
        prop_assert!(v.denom().is_positive());
        prop_assert!(v.numer().gcd(v.denom()).is_one());
    }

    #[test]
    fn negated_upper_index(p in any_rational(), q in 0i64..=12) {
        // binom(-p, q) = (-1)^q binom(p + q - 1, q)
        let lhs = binom(&-p.clone(), q);
        let rhs = binom(&(&p + rat(q - 1)), q);
        prop_assert_eq!(lhs, if q % 2 == 0 { rhs } else { -rhs });
    }
}

#[test]
fn pascal_recurrence_fixed_grid() {
    let mut count = 0;
    for num in -20..=20 {
        for den in [1, 2, 3, 7] {
            let p = ratio(num, den);
            for q in 1..=12 {
                assert_eq!(
                    binom(&p, q),
                    binom(&(&p - rat(1)), q - 1) + binom(&(&p - rat(1)), q),
                    "p={p} q={q}"
                );
            }
            count += 1;
        }
    }
    assert!(count >= 50);
}

#[test]
fn large_integer_upper() {
    // 100 choose 49, computed independently.
    let expected: num_bigint::BigInt = "98913082887808032681188722800".parse().unwrap();
    assert_eq!(binom_int(100, 49), Rational::from_integer(expected));
}

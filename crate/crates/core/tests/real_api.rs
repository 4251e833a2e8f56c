use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lrcreal::oracle::{random_unit_rational, redundant_stream};
use lrcreal::real::parse_decimal;
use lrcreal::{affine, compare, from_rational, Comparison, Digit, ExactReal, Rational};

fn arb_unit(max: i64) -> impl Strategy<Value = Rational> {
    (1..=max)
        .prop_flat_map(|d| (0..=d, Just(d)))
        .prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

#[test]
fn from_rational_sound_to_depth_64() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let q = random_unit_rational(&mut rng, 1_000_000);
        let x = from_rational(&q).unwrap();
        for n in [0, 1, 2, 7, 31, 63, 64] {
            assert!(x.to_interval(n).contains(&q), "{q} at depth {n}");
        }
    }
}

#[test]
fn from_rational_never_emits_c() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let q = random_unit_rational(&mut rng, 1_000_000);
        assert!(!from_rational(&q).unwrap().take(256).contains(&Digit::C));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decimal_within_tolerance(q in arb_unit(1_000_000), k in 1usize..=12) {
        let text = from_rational(&q).unwrap().to_decimal(k);
        prop_assert_eq!(text.split_once('.').unwrap().1.len(), k);
        let err = (parse_decimal(&text).unwrap() - q).abs();
        let tol = Rational::new(1, 10i64.pow(k as u32)).unwrap();
        prop_assert!(err <= tol, "{} off by {}", text, err);
    }

    #[test]
    fn compare_is_antisymmetric(p in arb_unit(1000), q in arb_unit(1000), seed: u64, n in 0usize..40) {
        let x = from_rational(&p).unwrap();
        let y = ExactReal::from_digits(redundant_stream(&q, seed).unwrap());
        let xy = compare(&x, &y, n);
        prop_assert_eq!(compare(&y, &x, n), xy.reverse());
        match xy {
            Comparison::Less => prop_assert!(p < q),
            Comparison::Greater => prop_assert!(p > q),
            Comparison::IndistinguishableAt { depth } => {
                prop_assert_eq!(depth, n);
                prop_assert!((p - q).abs() <= Rational::dyadic(n as u32).clone() * Rational::from_integer(2));
            }
        }
    }

    #[test]
    fn checked_affine_sound(
        n1 in 0i64..100, n2 in 0i64..100, n3 in 0i64..100,
        p in arb_unit(10_000), q in arb_unit(10_000), seed: u64,
    ) {
        let d = (n1 + n2 + n3).max(1) + (seed % 5) as i64;
        let [ca, cb, cc] = [n1, n2, n3].map(|n| Rational::new(n, d).unwrap());
        let x = ExactReal::from_digits(redundant_stream(&p, seed).unwrap());
        let y = from_rational(&q).unwrap();
        let out = affine(&ca, &cb, &cc, &x, &y, true).unwrap();
        let want = ca * p + cb * q + cc;
        prop_assert!(out.to_interval(40).contains(&want));
    }

    #[test]
    fn average_of_self_is_self(p in arb_unit(10_000)) {
        let x = from_rational(&p).unwrap();
        prop_assert!(x.average(&x).to_interval(40).contains(&p));
    }
}

#[test]
fn paper_sum_digits() {
    let one = Rational::one();
    let x = from_rational(&"1/3".parse().unwrap()).unwrap();
    let y = from_rational(&"1/6".parse().unwrap()).unwrap();
    let s = affine(&one, &one, &Rational::zero(), &x, &y, false).unwrap();
    // the engine settles on the centred representation of 1/2
    assert_eq!(s.digit_string(40), "C".repeat(40));
}

use concordia::{Poly, Rational};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-6i64..=6, -9i64..=9), 0..6).prop_map(|terms| Poly::from_ints(&terms))
}

fn symmetric() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-9i64..=9, 1..5).prop_map(|cs| {
        let mut terms = vec![(0, cs[0])];
        for (k, &c) in cs.iter().enumerate().skip(1) {
            terms.push((k as i64, c));
            terms.push((-(k as i64), c));
        }
        Poly::from_ints(&terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn involution_is_multiplicative(p in poly(), q in poly()) {
        prop_assert_eq!((&p * &q).involute(), &p.involute() * &q.involute());
        prop_assert_eq!(p.involute().involute(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn conway_round_trip(p in symmetric()) {
        let c = p.to_conway().unwrap();
        prop_assert_eq!(c.to_laurent().unwrap(), p);
    }

    #[test]
    fn circle_enclosure_contains_libm_value(p in poly(), a in 0i64..12, b in 1u64..13) {
        let iv = p.eval_circle(a, b, 80);
        let theta = 2.0 * std::f64::consts::PI * a as f64 / b as f64;
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (e, c) in p.terms() {
            let c = c.to_f64().unwrap();
            re += c * (e as f64 * theta).cos();
            im += c * (e as f64 * theta).sin();
        }
        let slack = Rational::new(1.into(), 1_000_000_000i64.into());
        let near = |lo: &Rational, hi: &Rational, x: f64| {
            let x = Rational::from_float(x).unwrap();
            lo - &slack <= x && x <= hi + &slack
        };
        prop_assert!(near(iv.re.lo(), iv.re.hi(), re));
        prop_assert!(near(iv.im.lo(), iv.im.hi(), im));
        prop_assert!(iv.width() < Rational::new(1.into(), (1u64 << 60).into()));
    }
}

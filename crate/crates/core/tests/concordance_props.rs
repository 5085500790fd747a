use concordia::concordance::{
    alexander, crossing_difference, mutation_invariance_genus2, skein_verify, CertVerdict,
};
use concordia::cyclotomic::Precision;
use concordia::generate;
use concordia::signatures::tristram_levine;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn alexander_mirror_and_sum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let v = generate::seifert(&mut r, 2);
        let w = generate::seifert(&mut r, 2);
        prop_assert_eq!(alexander(&v.mirror()).unwrap(), alexander(&v).unwrap());
        prop_assert_eq!(
            alexander(&v.connected_sum(&w)).unwrap(),
            &alexander(&v).unwrap() * &alexander(&w).unwrap()
        );
    }

    #[test]
    fn skein(seed in any::<u64>()) {
        prop_assert!(skein_verify(&generate::crossing(&mut rng(seed), 2)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn certificate_matches_signature_jump(seed in any::<u64>()) {
        let t = generate::crossing(&mut rng(seed), 2);
        let p = Precision::default();
        let c = crossing_difference(&t, p).unwrap();
        prop_assert!(c.verified());
        let plus = tristram_levine(&t.plus, 1, 2, p);
        let minus = tristram_levine(&t.minus, 1, 2, p);
        if let (Ok(a), Ok(b)) = (plus, minus) {
            let claimed = c.claimed_class.signature_at(1, 2, p).unwrap();
            prop_assert_eq!(claimed, a.value - b.value);
        }
    }

    #[test]
    fn mutation_keeps_alexander(seed in any::<u64>()) {
        let pair = generate::mutant_pair(&mut rng(seed));
        let r = mutation_invariance_genus2(&pair, Precision::default()).unwrap();
        prop_assert_eq!(&r.delta, &r.delta_star);
        prop_assert_eq!(alexander(&pair.v).unwrap(), alexander(&pair.vstar).unwrap());
        prop_assert_eq!(r.verdict, CertVerdict::Verified);
    }
}

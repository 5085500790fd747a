//! Seeded property checks run by `concordia selftest`.

use concordia::concordance::{s_equivalence_invariance, skein_verify};
use concordia::covers::cover_homology;
use concordia::cyclotomic::Precision;
use concordia::generate;
use concordia::signatures::{murasugi_check, tristram_levine};
use concordia::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub samples: usize,
    pub properties: Vec<PropertyResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }
}

const POINTS: [(i64, u64); 5] = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 5)];

fn property(
    name: &'static str,
    samples: usize,
    rng: &mut ChaCha8Rng,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Result<Option<bool>>,
) -> PropertyResult {
    let mut r = PropertyResult {
        name,
        passed: 0,
        failed: 0,
        skipped: 0,
        first_failure: None,
    };
    for i in 0..samples {
        match case(rng) {
            Ok(Some(true)) => r.passed += 1,
            Ok(None) => r.skipped += 1,
            Ok(Some(false)) => {
                r.failed += 1;
                r.first_failure.get_or_insert_with(|| format!("case {i}"));
            }
            Err(e) => {
                r.failed += 1;
                r.first_failure
                    .get_or_insert_with(|| format!("case {i}: {e}"));
            }
        }
    }
    r
}

fn skip_singular(r: Result<bool>) -> Result<Option<bool>> {
    match r {
        Ok(b) => Ok(Some(b)),
        Err(Error::SingularAtRoot { .. }) | Err(Error::SingularAtSample { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn run(seed: u64, samples: usize, prec: Precision) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let properties = vec![
        property("skein", samples, &mut rng, |rng| {
            skein_verify(&generate::crossing(rng, 2)).map(Some)
        }),
        property("s-equivalence", samples, &mut rng, |rng| {
            let (a, col, b) = generate::enlargement(rng, 2);
            s_equivalence_invariance(&a, &col, b).map(Some)
        }),
        property("cover-order-oracle", samples, &mut rng, |rng| {
            let v = generate::seifert(rng, 2);
            for q in [2, 3, 5] {
                cover_homology(&v, q)?;
            }
            Ok(Some(true))
        }),
        property("murasugi", samples, &mut rng, |rng| {
            let v = generate::seifert(rng, 2);
            for (a, b) in POINTS {
                if skip_singular(murasugi_check(&v, a, b, prec))? == Some(false) {
                    return Ok(Some(false));
                }
            }
            Ok(Some(true))
        }),
        property("signature-additivity", samples, &mut rng, |rng| {
            let v = generate::seifert(rng, 2);
            let w = generate::seifert(rng, 1);
            let sum = v.connected_sum(&w);
            let values: Result<Vec<i64>> = [&sum, &v, &w]
                .into_iter()
                .map(|k| tristram_levine(k, 1, 3, prec).map(|s| s.value))
                .collect();
            match values {
                Ok(x) => Ok(Some(x[0] == x[1] + x[2])),
                Err(Error::SingularAtRoot { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        }),
        property("mirror-antisymmetry", samples, &mut rng, |rng| {
            let v = generate::seifert(rng, 2);
            match tristram_levine(&v, 1, 2, prec) {
                Ok(s) => Ok(Some(
                    tristram_levine(&v.mirror(), 1, 2, prec)?.value == -s.value,
                )),
                Err(Error::SingularAtRoot { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        }),
    ];
    SelftestReport {
        seed,
        samples,
        properties,
    }
}

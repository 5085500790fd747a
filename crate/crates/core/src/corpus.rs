//! Named knots shipped with the binary.

use serde::Serialize;

use crate::seifert::{
    amphicheiral_family, build_v_pair, genus2_mutant, AmphicheiralData, Genus2MutationPair,
    SeifertMatrix,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnotRecord {
    pub name: String,
    pub seifert: SeifertMatrix,
    pub tags: Vec<String>,
}

fn record(name: &str, v: SeifertMatrix, tags: &[&str]) -> KnotRecord {
    KnotRecord {
        name: name.into(),
        seifert: v.with_label(name),
        tags: tags.iter().map(|s| s.to_string()).collect(),
    }
}

/// `A = trefoil_R`, `C = figure-eight`, `b = (1, 2)`.
pub fn mutant_sample() -> Genus2MutationPair {
    genus2_mutant(
        SeifertMatrix::trefoil_r().matrix(),
        SeifertMatrix::figure_eight().matrix(),
        &[1, 2],
    )
    .expect("sample blocks are valid")
}

/// Generator family with `m = 1`, `n = 0`, `a = e₁`, `b = 1`.
pub fn amphicheiral_sample() -> AmphicheiralData {
    let (a_mat, t) = amphicheiral_family(1, 0);
    AmphicheiralData {
        a_mat,
        t,
        a: vec![1, 0, 0, 0],
        b: 1,
        epsilon: 1,
    }
}

pub fn corpus() -> Vec<KnotRecord> {
    let pair = mutant_sample();
    let amph = build_v_pair(&amphicheiral_sample(), -1, 1).expect("sample data is equivariant");
    vec![
        record("unknot", SeifertMatrix::unknot(), &["trivial", "slice"]),
        record("trefoil_R", SeifertMatrix::trefoil_r(), &["torus"]),
        record(
            "trefoil_L",
            SeifertMatrix::trefoil_l(),
            &["torus", "mirror"],
        ),
        record(
            "figure-eight",
            SeifertMatrix::figure_eight(),
            &["amphicheiral"],
        ),
        record("K_J", SeifertMatrix::k_j(), &["algebraically-slice"]),
        record("mutant_V", pair.v, &["genus2-mutant"]),
        record("mutant_V*", pair.vstar, &["genus2-mutant"]),
        record("amphicheiral", amph, &["amphicheiral", "generator-family"]),
    ]
}

pub fn lookup(name: &str) -> Option<KnotRecord> {
    corpus().into_iter().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concordance::alexander;
    use std::collections::HashSet;

    #[test]
    fn names_unique_and_valid() {
        let c = corpus();
        let names: HashSet<_> = c.iter().map(|r| r.name.clone()).collect();
        assert_eq!(names.len(), c.len());
        for r in &c {
            assert!(r.seifert.is_knot(), "{}", r.name);
            assert_eq!(r.seifert.label(), r.name);
        }
    }

    #[test]
    fn k_j_alexander() {
        let v = lookup("K_J").unwrap().seifert;
        assert_eq!(
            alexander(&v).unwrap().to_string(),
            "-2*t^1 + 5*t^0 + -2*t^-1"
        );
        assert_eq!(
            alexander(&lookup("unknot").unwrap().seifert)
                .unwrap()
                .to_string(),
            "1*t^0"
        );
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn mutant_sample_alexander_agrees() {
        let p = mutant_sample();
        assert_ne!(p.v, p.vstar);
        assert_eq!(alexander(&p.v).unwrap(), alexander(&p.vstar).unwrap());
    }
}

//! Seeded random instances for property tests and `selftest`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::matrix::Matrix;
use crate::seifert::{
    amphicheiral_family, crossing_triple, genus2_mutant, s_enlarge, AmphicheiralData,
    CrossingTriple, Genus2MutationPair, SeifertMatrix,
};

/// Entries larger than this are rejected and the draw repeated.
pub const ENTRY_LIMIT: i64 = 12;

/// Random elementary congruence of the block sum of genus-one pieces
/// `[[x, 1], [0, y]]`. Rank is `2g` with `g` in `1..=max_genus`.
pub fn seifert<R: Rng + ?Sized>(rng: &mut R, max_genus: usize) -> SeifertMatrix {
    let g = rng.gen_range(1..=max_genus.max(1));
    seifert_of_genus(rng, g)
}

pub fn seifert_of_genus<R: Rng + ?Sized>(rng: &mut R, g: usize) -> SeifertMatrix {
    let n = 2 * g;
    loop {
        let mut v = Matrix::<i64>::zeros(n, n);
        for k in 0..g {
            v[(2 * k, 2 * k)] = rng.gen_range(-2..=2);
            v[(2 * k, 2 * k + 1)] = 1;
            v[(2 * k + 1, 2 * k + 1)] = rng.gen_range(-2..=2);
            if rng.gen_bool(0.3) {
                v[(2 * k + 1, 2 * k)] = rng.gen_range(-1..=1);
                v[(2 * k, 2 * k + 1)] = 1 + v[(2 * k + 1, 2 * k)];
            }
        }
        for _ in 0..rng.gen_range(0..=2 * n) {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            let c = *[-1, 1].choose(rng).unwrap();
            // e_i += c e_j on both sides
            for col in 0..n {
                v[(i, col)] += c * v[(j, col)];
            }
            for row in 0..n {
                v[(row, i)] += c * v[(row, j)];
            }
        }
        if (0..n).all(|i| (0..n).all(|j| v[(i, j)].abs() <= ENTRY_LIMIT)) {
            return SeifertMatrix::new(format!("random{n}"), v)
                .expect("congruent to a block sum of knots");
        }
    }
}

fn column<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-2..=2)).collect()
}

pub fn crossing<R: Rng + ?Sized>(rng: &mut R, max_genus: usize) -> CrossingTriple {
    let base = seifert(rng, max_genus);
    let col = column(rng, base.rank());
    let b = rng.gen_range(-2..=2);
    crossing_triple(&base, &col, b).expect("column length matches")
}

/// `(A, a, b)` for an S-equivalence enlargement, with `A` possibly the unknot.
pub fn enlargement<R: Rng + ?Sized>(
    rng: &mut R,
    max_genus: usize,
) -> (SeifertMatrix, Vec<i64>, i64) {
    let a = if rng.gen_bool(0.1) {
        SeifertMatrix::unknot()
    } else {
        seifert(rng, max_genus)
    };
    let col = column(rng, a.rank());
    let b = rng.gen_range(-3..=3);
    (a, col, b)
}

pub fn enlarged<R: Rng + ?Sized>(rng: &mut R, max_genus: usize) -> SeifertMatrix {
    let (a, col, b) = enlargement(rng, max_genus);
    s_enlarge(&a, &col, b).expect("column length matches")
}

/// Pair `(V, V*)` with `A`, `C` of genus one or two.
pub fn mutant_pair<R: Rng + ?Sized>(rng: &mut R) -> Genus2MutationPair {
    let a = seifert(rng, 2);
    let c = seifert(rng, 1);
    let b: Vec<i64> = column(rng, c.rank());
    genus2_mutant(a.matrix(), c.matrix(), &b).expect("blocks are valid")
}

/// Generator family data with `m + n = ±1`, random `a` and `b`, and `ε = 1`.
pub fn amphicheiral<R: Rng + ?Sized>(rng: &mut R) -> AmphicheiralData {
    let m = rng.gen_range(-2..=2);
    let n = *[-1, 1].choose(rng).unwrap() - m;
    let (a_mat, t) = amphicheiral_family(m, n);
    let mut a = column(rng, 4);
    if a.iter().all(|&x| x == 0) {
        a[0] = 1;
    }
    AmphicheiralData {
        a_mat,
        t,
        a,
        b: rng.gen_range(-2..=2),
        epsilon: 1,
    }
}

/// Random `P` with `det P = ±1`, entries bounded by `ENTRY_LIMIT`.
pub fn unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<i64> {
    loop {
        let mut p = Matrix::<i64>::identity(n);
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i != j {
                let c = rng.gen_range(-2..=2);
                for col in 0..n {
                    p[(i, col)] += c * p[(j, col)];
                }
            } else if rng.gen_bool(0.3) {
                for col in 0..n {
                    p[(i, col)] = -p[(i, col)];
                }
            }
        }
        if (0..n).all(|i| (0..n).all(|j| p[(i, j)].abs() <= ENTRY_LIMIT)) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amphicheiral::hk_factorize;
    use crate::concordance::alexander;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn draws_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let v = seifert(&mut rng, 3);
            assert!(v.is_knot());
            assert!(alexander(&v).is_ok());
            let t = crossing(&mut rng, 2);
            assert!(t.plus.is_knot() && t.minus.is_knot());
            let p = mutant_pair(&mut rng);
            assert!(p.v.is_knot() && p.vstar.is_knot());
            assert!(enlarged(&mut rng, 2).is_knot());
            let u = unimodular(&mut rng, 4);
            let d = u.map(|&x| num_bigint::BigInt::from(x)).det();
            assert!(d == 1.into() || d == (-1).into());
        }
    }

    #[test]
    fn amphicheiral_draws_factorize() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let d = amphicheiral(&mut rng);
            hk_factorize(&d).unwrap();
        }
    }

    #[test]
    fn deterministic() {
        let a = seifert(&mut ChaCha8Rng::seed_from_u64(3), 3);
        let b = seifert(&mut ChaCha8Rng::seed_from_u64(3), 3);
        assert_eq!(a, b);
    }
}

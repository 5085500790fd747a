use concordia::covers::{
    cover_homology, deck_action, enumerate_metabolizers, order_oracle, LinkingFormZp, Order,
};
use concordia::generate;
use concordia::matrix::Matrix;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn smallest_prime_factor(n: u64) -> Option<u64> {
    (2..=n).find(|d| n % d == 0)
}

fn identity(k: usize) -> Matrix<u64> {
    Matrix::from_fn(k, k, |i, j| u64::from(i == j))
}

fn mat_mul(a: &Matrix<u64>, b: &Matrix<u64>, p: u64) -> Matrix<u64> {
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols())
            .map(|k| a[(i, k)] * b[(k, j)] % p)
            .sum::<u64>()
            % p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_matches_resultant(seed in any::<u64>()) {
        let v = generate::seifert(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        for q in [2, 3, 5] {
            let h = cover_homology(&v, q).unwrap();
            let Order::Finite(n) = &h.order else {
                return Err(TestCaseError::fail("infinite order at prime-power q"));
            };
            prop_assert_eq!(n, &order_oracle(&v, q).unwrap());
        }
    }

    #[test]
    fn deck_action_has_order_dividing_q(seed in any::<u64>()) {
        let v = generate::seifert(&mut ChaCha8Rng::seed_from_u64(seed), 2);
        for q in [2u64, 3] {
            let h = cover_homology(&v, q).unwrap();
            let Some(n) = h.order.finite().and_then(|n| n.to_u64()) else { continue };
            let Some(p) = smallest_prime_factor(n) else { continue };
            let Ok(d) = deck_action(&v, q, p) else { continue };
            let k = d.matrix.rows();
            let mut acc = identity(k);
            for _ in 0..q {
                acc = mat_mul(&acc, &d.matrix, p);
            }
            prop_assert_eq!(acc, identity(k));
            for e in d.eigenvalues() {
                prop_assert_eq!((0..q).fold(1u64, |x, _| x * e % p), 1);
            }
        }
    }
}

#[test]
fn hyperbolic_plane_has_two_metabolizers() {
    for p in [3u64, 5, 7] {
        let form = LinkingFormZp::new(p, Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]));
        let ms = enumerate_metabolizers(&form, None, false).unwrap();
        assert_eq!(ms.len(), 2, "p = {p}");
        for m in &ms {
            assert_eq!(m.basis.len(), 1);
            let v = &m.basis[0];
            assert_eq!((2 * v[0] * v[1]) % p, 0);
        }
    }
}

#[test]
fn enumerated_metabolizers_are_isotropic() {
    let p = 5u64;
    // x² + y² - z² - w² over Z_5
    let form = LinkingFormZp::new(
        p,
        Matrix::from_rows(vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 4, 0],
            vec![0, 0, 0, 4],
        ]),
    );
    let ms = enumerate_metabolizers(&form, None, false).unwrap();
    assert!(!ms.is_empty());
    for m in &ms {
        assert_eq!(m.basis.len(), 2);
        for x in &m.basis {
            for y in &m.basis {
                let s: u64 = (0..4)
                    .map(|i| x[i] * form.gram[(i, i)] % p * y[i])
                    .sum::<u64>()
                    % p;
                assert_eq!(s, 0);
            }
        }
    }
}

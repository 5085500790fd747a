//! Smith normal form of integer matrices with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;

/// `U · A · W = D` with `U`, `W` unimodular and `D` diagonal,
/// `d_1 | d_2 | …`, all `d_i ≥ 0`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Matrix<BigInt>,
    pub w: Matrix<BigInt>,
    pub d: Matrix<BigInt>,
}

impl Smith {
    /// The diagonal invariant factors (length `min(rows, cols)`).
    pub fn invariants(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }
}

fn row_combine(m: &mut Matrix<BigInt>, i: usize, j: usize, a: &[BigInt; 4]) {
    // (row_i, row_j) <- (a0 row_i + a1 row_j, a2 row_i + a3 row_j)
    for c in 0..m.cols() {
        let x = m[(i, c)].clone();
        let y = m[(j, c)].clone();
        m[(i, c)] = &a[0] * &x + &a[1] * &y;
        m[(j, c)] = &a[2] * &x + &a[3] * &y;
    }
}

fn col_combine(m: &mut Matrix<BigInt>, i: usize, j: usize, a: &[BigInt; 4]) {
    for r in 0..m.rows() {
        let x = m[(r, i)].clone();
        let y = m[(r, j)].clone();
        m[(r, i)] = &a[0] * &x + &a[1] * &y;
        m[(r, j)] = &a[2] * &x + &a[3] * &y;
    }
}

/// Unimodular 2×2 step sending `(x, y)` to `(g, 0)`.
fn gcd_step(x: &BigInt, y: &BigInt) -> [BigInt; 4] {
    if y.is_multiple_of(x) {
        return [BigInt::one(), BigInt::zero(), -(y / x), BigInt::one()];
    }
    let e = x.extended_gcd(y);
    let g = e.gcd;
    [e.x, e.y, -(y / &g), x / &g]
}

pub fn smith(a: &Matrix<BigInt>) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::<BigInt>::identity(m);
    let mut w = Matrix::<BigInt>::identity(n);
    let k_max = m.min(n);
    for k in 0..k_max {
        // bring the smallest nonzero entry of the trailing block to (k, k)
        let Some((pi, pj)) = (k..m)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[(i, j)].is_zero())
            .min_by_key(|&(i, j)| d[(i, j)].abs())
        else {
            break;
        };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        w.swap_cols(k, pj);
        loop {
            let mut dirty = false;
            for i in k + 1..m {
                if !d[(i, k)].is_zero() {
                    let s = gcd_step(&d[(k, k)], &d[(i, k)]);
                    row_combine(&mut d, k, i, &s);
                    row_combine(&mut u, k, i, &s);
                }
            }
            for j in k + 1..n {
                if !d[(k, j)].is_zero() {
                    let s = gcd_step(&d[(k, k)], &d[(k, j)]);
                    col_combine(&mut d, k, j, &s);
                    col_combine(&mut w, k, j, &s);
                    dirty = true;
                }
            }
            if dirty && (k + 1..m).any(|i| !d[(i, k)].is_zero()) {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let p = d[(k, k)].clone();
            let bad = (k + 1..m)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    let one = [BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::one()];
                    row_combine(&mut d, k, i, &one);
                    row_combine(&mut u, k, i, &one);
                }
                None => break,
            }
        }
        if d[(k, k)].is_negative() {
            for c in 0..n {
                d[(k, c)] = -d[(k, c)].clone();
            }
            for c in 0..m {
                u[(k, c)] = -u[(k, c)].clone();
            }
        }
    }
    Smith { u, w, d }
}

/// Invariant factors only.
pub fn invariant_factors(a: &Matrix<BigInt>) -> Vec<BigInt> {
    smith(a).invariants()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    fn check(a: &Matrix<BigInt>) -> Vec<BigInt> {
        let s = smith(a);
        assert_eq!(&(&s.u * a) * &s.w, s.d);
        assert!(s.d.is_diagonal() || s.d.rows() != s.d.cols());
        assert!(s.u.det().abs().is_one());
        assert!(s.w.det().abs().is_one());
        let inv = s.invariants();
        for w in inv.windows(2) {
            assert!(
                w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && w[1].is_multiple_of(&w[0])
            );
        }
        inv
    }

    #[test]
    fn divisible_pivot_terminates() {
        assert_eq!(check(&zm(&[&[-3, -4], &[2, 3]])), vec![1.into(), 1.into()]);
        assert_eq!(check(&zm(&[&[1, 1], &[1, 1]])), vec![1.into(), 0.into()]);
    }

    #[test]
    fn small_examples() {
        let inv = check(&zm(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(inv, vec![2.into(), 6.into(), 12.into()]);
        assert_eq!(check(&zm(&[&[7, 0], &[0, 7]])), vec![7.into(), 7.into()]);
        assert_eq!(check(&zm(&[&[-1, 2], &[-2, 1]])), vec![1.into(), 3.into()]);
        assert_eq!(check(&zm(&[&[2, 0], &[0, 3]])), vec![1.into(), 6.into()]);
        assert_eq!(check(&zm(&[&[0, 0], &[0, 0]])), vec![0.into(), 0.into()]);
    }

    #[test]
    fn determinant_is_preserved_up_to_sign() {
        let a = zm(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let inv = check(&a);
        let prod: BigInt = inv.iter().product();
        assert_eq!(prod, a.det().abs());
    }
}

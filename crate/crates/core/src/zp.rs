//! Linear algebra over the prime field `Z_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Rational;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` when `n = p^k` with `k ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn identity(n: usize) -> Matrix<u64> {
    Matrix::from_fn(n, n, |i, j| u64::from(i == j))
}

/// The field `Z_p`; elements are stored in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        Zp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Reduction of a rational whose denominator is prime to `p`.
    pub fn from_rational(&self, x: &Rational) -> Option<u64> {
        let d = self.from_bigint(x.denom());
        let di = self.inv(d)?;
        Some(self.mul(self.from_bigint(x.numer()), di))
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a % self.p != 0).then(|| self.pow(a, self.p - 2))
    }

    /// Signed representative in `(-p/2, p/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn reduce_int(&self, m: &Matrix<i64>) -> Matrix<u64> {
        m.map(|&x| self.from_i64(x))
    }

    pub fn reduce_big(&self, m: &Matrix<BigInt>) -> Matrix<u64> {
        m.map(|x| self.from_bigint(x))
    }

    pub fn reduce_rational(&self, m: &Matrix<Rational>) -> Result<Matrix<u64>> {
        let mut out = Matrix::from_fn(m.rows(), m.cols(), |_, _| 0u64);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = self
                    .from_rational(&m[(i, j)])
                    .ok_or(Error::NotInvertibleModP { p: self.p })?;
            }
        }
        Ok(out)
    }

    pub fn mat_mul(&self, a: &Matrix<u64>, b: &Matrix<u64>) -> Matrix<u64> {
        assert_eq!(a.cols(), b.rows());
        Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).fold(0, |acc, k| self.add(acc, self.mul(a[(i, k)], b[(k, j)])))
        })
    }

    pub fn mat_vec(&self, a: &Matrix<u64>, v: &[u64]) -> Vec<u64> {
        (0..a.rows())
            .map(|i| (0..a.cols()).fold(0, |acc, k| self.add(acc, self.mul(a[(i, k)], v[k]))))
            .collect()
    }

    pub fn dot(&self, u: &[u64], g: &Matrix<u64>, v: &[u64]) -> u64 {
        let gv = self.mat_vec(g, v);
        u.iter()
            .zip(&gv)
            .fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    pub fn mat_pow(&self, a: &Matrix<u64>, mut e: u64) -> Matrix<u64> {
        let mut r = identity(a.rows());
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mat_mul(&r, &b);
            }
            b = self.mat_mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Row-reduced echelon form and pivot columns.
    pub fn rref(&self, m: &Matrix<u64>) -> (Matrix<u64>, Vec<usize>) {
        let mut a = m.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols() {
            if row == a.rows() {
                break;
            }
            let Some(pr) = (row..a.rows()).find(|&r| a[(r, col)] != 0) else {
                continue;
            };
            a.swap_rows(row, pr);
            let inv = self.inv(a[(row, col)]).unwrap();
            for c in 0..a.cols() {
                a[(row, c)] = self.mul(a[(row, c)], inv);
            }
            for r in 0..a.rows() {
                if r != row && a[(r, col)] != 0 {
                    let f = a[(r, col)];
                    for c in 0..a.cols() {
                        let v = self.mul(f, a[(row, c)]);
                        a[(r, c)] = self.sub(a[(r, c)], v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self, m: &Matrix<u64>) -> usize {
        self.rref(m).1.len()
    }

    /// Basis of the right null space `{x : m x = 0}`.
    pub fn nullspace(&self, m: &Matrix<u64>) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref(m);
        let n = m.cols();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; n];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(r[(i, f)]);
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, as vectors.
    pub fn column_space(&self, m: &Matrix<u64>) -> Vec<Vec<u64>> {
        let (_, pivots) = self.rref(m);
        pivots.iter().map(|&c| m.col(c)).collect()
    }

    pub fn inverse(&self, m: &Matrix<u64>) -> Option<Matrix<u64>> {
        let n = m.rows();
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                m[(i, j)]
            } else {
                u64::from(j - n == i)
            }
        });
        let (r, pivots) = self.rref(&aug);
        (pivots.len() == n && pivots.iter().enumerate().all(|(i, &c)| i == c))
            .then(|| r.block(0, n, n, 2 * n))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(&self, n: usize, cols: &[Vec<u64>]) -> Matrix<u64> {
        Matrix::from_fn(n, cols.len(), |i, j| cols[j][i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn field_ops() {
        let f = Zp::new(7);
        assert_eq!(f.inv(2), Some(4));
        assert_eq!(f.inv(0), None);
        assert_eq!(f.pow(2, 3), 1);
        assert_eq!(f.signed(6), -1);
        assert_eq!(f.from_rational(&Rational::new(1.into(), 2.into())), Some(4));
    }

    #[test]
    fn nullspace_and_inverse() {
        let f = Zp::new(5);
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 2]]);
        let ns = f.nullspace(&m);
        assert_eq!(ns.len(), 1);
        assert!(f.mat_vec(&m, &ns[0]).iter().all(|&x| x == 0));
        let a = Matrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let ai = f.inverse(&a).unwrap();
        assert_eq!(f.mat_mul(&a, &ai), identity(2));
        assert!(f
            .inverse(&Matrix::from_rows(vec![vec![1, 2], vec![2, 4]]))
            .is_none());
    }
}

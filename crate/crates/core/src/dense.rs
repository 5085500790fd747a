//! Dense univariate helpers over Z and Q (coefficients low to high).
//!
//! Internal workhorse for gcds, square-free decomposition, cyclotomic
//! polynomials and resultants. The public polynomial type is
//! [`crate::laurent::LaurentPoly`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

pub type ZDense = Vec<BigInt>;
pub type QDense = Vec<Rational>;

pub fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn degree<T: Zero>(p: &[T]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn q_add(a: &[Rational], b: &[Rational]) -> QDense {
    let n = a.len().max(b.len());
    let mut out: QDense = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x + y
        })
        .collect();
    trim(&mut out);
    out
}

pub fn q_sub(a: &[Rational], b: &[Rational]) -> QDense {
    let nb: QDense = b.iter().map(|c| -c.clone()).collect();
    q_add(a, &nb)
}

pub fn q_mul(a: &[Rational], b: &[Rational]) -> QDense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division over Q. Panics on a zero divisor.
pub fn q_divrem(a: &[Rational], b: &[Rational]) -> (QDense, QDense) {
    let db = degree(b).expect("division by zero polynomial");
    let mut rem: QDense = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lead_inv = Rational::one() / b[db].clone();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let coef = rem[dr].clone() * lead_inv.clone();
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            rem[shift + j] -= coef.clone() * bj;
        }
        quot[shift] = coef;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub fn q_derivative(a: &[Rational]) -> QDense {
    let mut out: QDense = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

pub fn q_monic(a: &[Rational]) -> QDense {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let lc = a[d].clone();
            a[..=d].iter().map(|c| c / &lc).collect()
        }
    }
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(a: &[BigInt]) -> ZDense {
    let mut out = a.to_vec();
    trim(&mut out);
    if out.is_empty() {
        return out;
    }
    let mut c = content(&out);
    if out.last().unwrap().is_negative() {
        c = -c;
    }
    out.iter().map(|x| x / &c).collect()
}

/// Clears denominators: returns a primitive integer polynomial proportional to `a`.
pub fn q_to_primitive_z(a: &[Rational]) -> ZDense {
    let l = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let z: ZDense = a
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    primitive_part(&z)
}

pub fn z_to_q(a: &[BigInt]) -> QDense {
    a.iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect()
}

/// Pseudo-remainder of `a` by `b` over Z.
fn z_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZDense {
    let db = degree(b).expect("pseudo-division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    let lb = b[db].clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            r[shift + j] -= &lr * bj;
        }
        trim(&mut r);
    }
    r
}

/// Gcd over Z[t] via the primitive remainder sequence; result primitive
/// with positive leading coefficient.
pub fn z_gcd(a: &[BigInt], b: &[BigInt]) -> ZDense {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.is_empty() {
        return y;
    }
    if y.is_empty() {
        return x;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = z_pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    x
}

/// Monic gcd over Q.
pub fn q_gcd(a: &[Rational], b: &[Rational]) -> QDense {
    let g = z_gcd(&q_to_primitive_z(a), &q_to_primitive_z(b));
    q_monic(&z_to_q(&g))
}

/// Yun's square-free decomposition of a nonzero polynomial over Q.
///
/// Returns monic `g_1, g_2, …` with `a = lc · Π g_i^i`; trailing ones are trimmed.
pub fn q_squarefree(a: &[Rational]) -> Vec<QDense> {
    let a = q_monic(a);
    let mut out = Vec::new();
    if degree(&a).unwrap_or(0) == 0 {
        return out;
    }
    let da = q_derivative(&a);
    let b = q_gcd(&a, &da);
    let mut c = q_divrem(&a, &b).0;
    let mut d = q_sub(&q_divrem(&da, &b).0, &q_derivative(&c));
    loop {
        let g = q_gcd(&c, &d);
        out.push(g.clone());
        c = q_divrem(&c, &g).0;
        if degree(&c).unwrap_or(0) == 0 {
            break;
        }
        d = q_sub(&q_divrem(&d, &g).0, &q_derivative(&c));
    }
    while out.last().is_some_and(|g| degree(g) == Some(0)) {
        out.pop();
    }
    out
}

/// The `n`-th cyclotomic polynomial over Z.
pub fn cyclotomic(n: u64) -> ZDense {
    assert!(n >= 1, "cyclotomic index must be positive");
    // t^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: QDense = vec![Rational::zero(); n as usize + 1];
    num[0] = -Rational::one();
    num[n as usize] = Rational::one();
    for d in 1..n {
        if n % d == 0 {
            let phi = z_to_q(&cyclotomic(d));
            num = q_divrem(&num, &phi).0;
        }
    }
    num.iter().map(|c| c.to_integer()).collect()
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn z_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Resultant of two integer polynomials via the Sylvester matrix.
pub fn z_resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (Some(m), Some(n)) = (degree(f), degree(g)) else {
        return BigInt::zero();
    };
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut syl = vec![vec![BigInt::zero(); size]; size];
    // rows 0..n: shifted copies of f (high to low); rows n..n+m: copies of g.
    for r in 0..n {
        for (k, c) in f[..=m].iter().rev().enumerate() {
            syl[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g[..=n].iter().rev().enumerate() {
            syl[n + r][r + k] = c.clone();
        }
    }
    z_det(&syl)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZDense {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic(1), z(&[-1, 1]));
        assert_eq!(cyclotomic(2), z(&[1, 1]));
        assert_eq!(cyclotomic(3), z(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), z(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), z(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), z(&[1, 0, -1, 0, 1]));
        assert_eq!(degree(&cyclotomic(18)), Some(6));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = z(&[-2, 1, 1]);
        let b = z(&[3, -4, 1]);
        assert_eq!(z_gcd(&a, &b), z(&[-1, 1]));
    }

    #[test]
    fn squarefree_splits_multiplicities() {
        // (t+1)^2 (t-2)
        let p = z_to_q(&z(&[-2, -3, 0, 1]));
        let parts = q_squarefree(&p);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], z_to_q(&z(&[-2, 1])));
        assert_eq!(parts[1], z_to_q(&z(&[1, 1])));
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(t^2 - t + 1, t + 1) = value at -1 = 3
        assert_eq!(
            z_resultant(&z(&[1, -1, 1]), &z(&[1, 1])).abs(),
            BigInt::from(3)
        );
        // 2t^2 - 5t + 2 over the primitive cube roots: (-7ω)(-7ω²) = 49
        assert_eq!(
            z_resultant(&z(&[2, -5, 2]), &z(&[1, 1, 1])).abs(),
            BigInt::from(49)
        );
    }

    #[test]
    fn bareiss_det() {
        let m = vec![z(&[2, 0, 1]), z(&[1, 3, 2]), z(&[1, 1, 2])];
        assert_eq!(z_det(&m), BigInt::from(6));
        let m = vec![z(&[0, 1]), z(&[1, 0])];
        assert_eq!(z_det(&m), BigInt::from(-1));
    }
}

//! Tristram–Levine signatures at rational points of the circle.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::concordance::alexander;
use crate::cyclotomic::{CycloField, Precision};
use crate::dense;
use crate::error::{Error, Result};
use crate::seifert::SeifertMatrix;
use crate::witt::{hermitianize_poly, signature_poly_matrix};
use crate::zp::prime_power;

/// `σ_ω` at `ω = e^{2πi a/b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureSample {
    pub a: i64,
    pub b: u64,
    pub value: i64,
}

fn reduce(a: i64, b: u64) -> (i64, u64) {
    assert!(b > 0, "denominator must be positive");
    let a = a.rem_euclid(b as i64);
    let g = (a as u64).gcd(&b).max(1);
    (a / g as i64, b / g)
}

/// True when `ω = e^{2πi a/b}` is a root of `Δ_V`.
pub fn is_root(v: &SeifertMatrix, a: i64, b: u64) -> Result<bool> {
    let (a, b) = reduce(a, b);
    if a == 0 {
        return Ok(false);
    }
    let (d, _) = alexander(v)?.to_dense();
    let phi = dense::z_to_q(&dense::cyclotomic(b));
    Ok(dense::q_divrem(&d, &phi).1.is_empty())
}

pub fn tristram_levine(
    v: &SeifertMatrix,
    a: i64,
    b: u64,
    prec: Precision,
) -> Result<SignatureSample> {
    if v.rank() % 2 == 1 {
        return Err(Error::OddRank(v.rank()));
    }
    let (ra, rb) = reduce(a, b);
    let value = if ra == 0 {
        0
    } else {
        if is_root(v, ra, rb)? {
            return Err(Error::SingularAtRoot { a, b });
        }
        signature_poly_matrix(&hermitianize_poly(v.matrix()), ra, rb, prec).map_err(
            |e| match e {
                Error::SingularAtSample { .. } => Error::SingularAtRoot { a, b },
                e => e,
            },
        )?
    };
    Ok(SignatureSample { a, b, value })
}

/// `σ_{1/7} + σ_{2/7} + σ_{3/7}`.
pub fn s7(v: &SeifertMatrix, prec: Precision) -> Result<i64> {
    (1..=3)
        .map(|a| tristram_levine(v, a, 7, prec).map(|s| s.value))
        .sum()
}

/// Samples at every reduced `a/b` in `(0, 1)` with `b ≤ cap`, roots of `Δ`
/// excluded, sorted by angle.
pub fn signature_function(
    v: &SeifertMatrix,
    cap: u64,
    prec: Precision,
) -> Result<Vec<SignatureSample>> {
    let mut pts: Vec<(i64, u64)> = (2..=cap)
        .flat_map(|b| {
            (1..b)
                .filter(move |a| a.gcd(&b) == 1)
                .map(move |a| (a as i64, b))
        })
        .collect();
    pts.sort_by(|x, y| cmp_angle(*x, *y));
    let mut out = Vec::with_capacity(pts.len());
    for (a, b) in pts {
        match tristram_levine(v, a, b, prec) {
            Ok(s) => out.push(s),
            Err(Error::SingularAtRoot { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn cmp_angle(x: (i64, u64), y: (i64, u64)) -> Ordering {
    (x.0 as i128 * y.1 as i128).cmp(&(y.0 as i128 * x.1 as i128))
}

/// CSV with columns `a,b,angle_numerator,value`; the angle of a row is
/// `angle_numerator / L` of a full turn, `L` the lcm of all denominators.
pub fn to_csv(samples: &[SignatureSample]) -> String {
    let l = samples
        .iter()
        .fold(BigInt::from(1), |acc, s| acc.lcm(&BigInt::from(s.b)));
    let mut out = String::from("a,b,angle_numerator,value\n");
    for s in samples {
        let num = BigInt::from(s.a) * (&l / BigInt::from(s.b));
        let _ = writeln!(out, "{},{},{},{}", s.a, s.b, num, s.value);
    }
    out
}

/// `sign Δ(ω) = (-1)^{σ_ω / 2}` for a prime-power root of unity `ω`.
pub fn murasugi_check(v: &SeifertMatrix, a: i64, b: u64, prec: Precision) -> Result<bool> {
    if prime_power(b).is_none() {
        return Err(Error::NotPrimePower(b));
    }
    let (ra, rb) = reduce(a, b);
    let delta = alexander(v)?;
    let f = CycloField::new(ra, rb);
    let x = f.from_poly(&delta);
    let sign = match f.real_sign(&x, prec)? {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => return Err(Error::SingularAtRoot { a, b }),
    };
    let sigma = tristram_levine(v, a, b, prec)?.value;
    let expected = if (sigma / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    };
    Ok(sign == expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn basic_values() {
        let t = SeifertMatrix::trefoil_r();
        assert_eq!(tristram_levine(&t, 1, 2, p()).unwrap().value, -2);
        assert_eq!(
            tristram_levine(&SeifertMatrix::k_j(), 1, 2, p())
                .unwrap()
                .value,
            0
        );
        assert_eq!(
            tristram_levine(&SeifertMatrix::unknot(), 3, 7, p())
                .unwrap()
                .value,
            0
        );
        assert_eq!(
            tristram_levine(&t, 1, 6, p()),
            Err(Error::SingularAtRoot { a: 1, b: 6 })
        );
        assert_eq!(tristram_levine(&t, 0, 5, p()).unwrap().value, 0);
    }

    #[test]
    fn s7_values() {
        let t = SeifertMatrix::trefoil_r();
        assert_eq!(s7(&t, p()), Ok(-4));
        assert_eq!(s7(&t.mirror(), p()), Ok(4));
        assert_eq!(s7(&t.mirror().times(2), p()), Ok(8));
    }

    #[test]
    fn step_function() {
        let t = SeifertMatrix::trefoil_r();
        let f = signature_function(&t, 6, p()).unwrap();
        assert!(!f
            .iter()
            .any(|s| (s.a, s.b) == (1, 6) || (s.a, s.b) == (5, 6)));
        for s in &f {
            let inside = 6 * s.a > s.b as i64 && 6 * s.a < 5 * s.b as i64;
            assert_eq!(s.value, if inside { -2 } else { 0 }, "{s:?}");
        }
        assert!(signature_function(&SeifertMatrix::unknot(), 5, p())
            .unwrap()
            .iter()
            .all(|s| s.value == 0));
        let kj = signature_function(&SeifertMatrix::k_j(), 12, p()).unwrap();
        assert!(kj.iter().all(|s| s.value == 0));
        for w in kj.windows(2) {
            assert_eq!(
                cmp_angle((w[0].a, w[0].b), (w[1].a, w[1].b)),
                Ordering::Less
            );
        }
    }

    #[test]
    fn csv_layout() {
        let f = signature_function(&SeifertMatrix::trefoil_r(), 3, p()).unwrap();
        assert_eq!(
            to_csv(&f),
            "a,b,angle_numerator,value\n1,3,2,-2\n1,2,3,-2\n2,3,4,-2\n"
        );
    }

    #[test]
    fn murasugi() {
        let t = SeifertMatrix::trefoil_r();
        assert_eq!(murasugi_check(&t, 1, 2, p()), Ok(true));
        assert_eq!(
            murasugi_check(&SeifertMatrix::unknot(), 1, 9, p()),
            Ok(true)
        );
        assert_eq!(murasugi_check(&SeifertMatrix::k_j(), 1, 3, p()), Ok(true));
        assert_eq!(murasugi_check(&t, 1, 6, p()), Err(Error::NotPrimePower(6)));
    }
}

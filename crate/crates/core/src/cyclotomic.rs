//! Exact arithmetic in `Q(ω)` for `ω = e^{2πi a/b}`, with certified signs of
//! real elements.
//!
//! Elements are polynomials in `ω` reduced modulo the cyclotomic polynomial
//! `Φ_b`. Zero tests are exact; the sign of a real element is certified by
//! evaluating it on dyadic intervals at increasing precision.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dense::{self, QDense};
use crate::error::{Error, Result};
use crate::laurent::Poly;
use crate::ratfunc::RatFunc;
use crate::scalar::Rational;

pub const DEFAULT_START_BITS: u32 = 64;
pub const DEFAULT_CAP_BITS: u32 = 4096;
pub const PRECISION_CAP_ENV: &str = "CONCORDIA_PRECISION_CAP";

/// Working precision schedule for sign certification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start: u32,
    pub cap: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start: DEFAULT_START_BITS,
            cap: DEFAULT_CAP_BITS,
        }
    }
}

impl Precision {
    /// Default schedule with the cap taken from `CONCORDIA_PRECISION_CAP` when set.
    pub fn from_env() -> Self {
        let mut p = Self::default();
        if let Some(cap) = std::env::var(PRECISION_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u32>().ok())
        {
            p.cap = cap.max(8);
            p.start = p.start.min(p.cap);
        }
        p
    }

    pub fn with_start(mut self, start: u32) -> Self {
        self.start = start.clamp(8, self.cap.max(8));
        self
    }
}

/// The field `Q(ω)` with a fixed complex embedding.
#[derive(Clone, Debug)]
pub struct CycloField {
    a: i64,
    b: u64,
    phi: QDense,
}

/// An element of a [`CycloField`]; coefficients of `1, ω, ω², …`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cyc(QDense);

impl Cyc {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl CycloField {
    /// `Q(e^{2πi a/b})`; the fraction is reduced first.
    pub fn new(a: i64, b: u64) -> Self {
        assert!(b > 0, "denominator must be positive");
        let g = (a.unsigned_abs()).gcd(&b).max(1);
        let (a, b) = (a / g as i64, b / g);
        let a = a.rem_euclid(b as i64);
        let phi = dense::z_to_q(&dense::cyclotomic(b));
        CycloField { a, b, phi }
    }

    pub fn point(&self) -> (i64, u64) {
        (self.a, self.b)
    }

    fn reduce(&self, mut v: QDense) -> Cyc {
        dense::trim(&mut v);
        if v.len() >= self.phi.len() {
            v = dense::q_divrem(&v, &self.phi).1;
        }
        dense::trim(&mut v);
        Cyc(v)
    }

    pub fn zero(&self) -> Cyc {
        Cyc(Vec::new())
    }

    pub fn one(&self) -> Cyc {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> Cyc {
        self.reduce(vec![r])
    }

    /// Image of a Laurent polynomial under `t ↦ ω`.
    pub fn from_poly(&self, p: &Poly) -> Cyc {
        let b = self.b as i64;
        let mut v = vec![Rational::zero(); self.b as usize];
        for (e, c) in p.terms() {
            v[e.rem_euclid(b) as usize] += c;
        }
        self.reduce(v)
    }

    /// Image of a rational function, or `None` when `ω` is a pole.
    pub fn from_ratfunc(&self, f: &RatFunc) -> Option<Cyc> {
        let n = self.from_poly(f.num());
        if f.is_poly() {
            return Some(n);
        }
        let d = self.from_poly(f.den());
        self.inv(&d).map(|di| self.mul(&n, &di))
    }

    pub fn add(&self, x: &Cyc, y: &Cyc) -> Cyc {
        let mut v = dense::q_add(&x.0, &y.0);
        dense::trim(&mut v);
        Cyc(v)
    }

    pub fn sub(&self, x: &Cyc, y: &Cyc) -> Cyc {
        let mut v = dense::q_sub(&x.0, &y.0);
        dense::trim(&mut v);
        Cyc(v)
    }

    pub fn neg(&self, x: &Cyc) -> Cyc {
        Cyc(x.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, x: &Cyc, y: &Cyc) -> Cyc {
        if x.is_zero() || y.is_zero() {
            return self.zero();
        }
        self.reduce(dense::q_mul(&x.0, &y.0))
    }

    /// Complex conjugation, `ω ↦ ω⁻¹ = ω^{b-1}`.
    pub fn conj(&self, x: &Cyc) -> Cyc {
        let b = self.b as usize;
        let mut v = vec![Rational::zero(); b];
        for (k, c) in x.0.iter().enumerate() {
            v[(b - k % b) % b] += c;
        }
        self.reduce(v)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm over Q.
    pub fn inv(&self, x: &Cyc) -> Option<Cyc> {
        if x.is_zero() {
            return None;
        }
        // Invariant: s_i · x ≡ r_i (mod Φ).
        let (mut r0, mut r1) = (self.phi.clone(), x.0.clone());
        let (mut s0, mut s1): (QDense, QDense) = (Vec::new(), vec![Rational::one()]);
        while dense::degree(&r1).is_some_and(|d| d > 0) {
            let (q, r) = dense::q_divrem(&r0, &r1);
            let mut s = dense::q_sub(&s0, &dense::q_mul(&q, &s1));
            dense::trim(&mut s);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            dense::trim(&mut r1);
        }
        let c = r1.first().cloned().filter(|c| !c.is_zero())?;
        let scaled: QDense = s1.iter().map(|v| v / &c).collect();
        Some(self.reduce(scaled))
    }

    /// True when the element is fixed by complex conjugation.
    pub fn is_real(&self, x: &Cyc) -> bool {
        self.conj(x) == *x
    }

    /// Certified sign of a real element, refining precision up to the cap.
    pub fn real_sign(&self, x: &Cyc, prec: Precision) -> Result<Ordering> {
        if x.is_zero() {
            return Ok(Ordering::Equal);
        }
        debug_assert!(self.is_real(x), "sign requested for a non-real element");
        let p = Poly::from_dense(&x.0, 0);
        let mut bits = prec.start.max(8).min(prec.cap.max(8));
        loop {
            let v = p.eval_circle(self.a, self.b, bits);
            if let Some(s) = v.re.certified_sign() {
                return Ok(s);
            }
            if bits >= prec.cap {
                return Err(Error::PrecisionExhausted { cap: prec.cap });
            }
            bits = (bits * 2).min(prec.cap);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn inverse_roundtrip() {
        let f = CycloField::new(2, 7);
        let x = f.from_poly(&Poly::from_ints(&[(1, 1), (0, 3), (-2, -2)]));
        let y = f.inv(&x).unwrap();
        assert_eq!(f.mul(&x, &y), f.one());
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn roots_of_phi_vanish() {
        // t - 1 + t^-1 vanishes at primitive sixth roots of unity
        let p = Poly::from_ints(&[(1, 1), (0, -1), (-1, 1)]);
        assert!(CycloField::new(1, 6).from_poly(&p).is_zero());
        assert!(!CycloField::new(1, 5).from_poly(&p).is_zero());
    }

    #[test]
    fn conjugation_and_signs() {
        let f = CycloField::new(1, 3);
        let w = f.from_poly(&Poly::t());
        let n = f.mul(&w, &f.conj(&w));
        assert_eq!(n, f.one());
        // -2ω + 5 - 2ω̄ = 7
        let v = f.from_poly(&Poly::from_ints(&[(1, -2), (0, 5), (-1, -2)]));
        assert_eq!(v, f.from_rational(rat(7)));
        let tref = f.from_poly(&Poly::from_ints(&[(1, 1), (0, -1), (-1, 1)]));
        assert_eq!(f.real_sign(&tref, Precision::default()), Ok(Ordering::Less));
    }

    #[test]
    fn pole_detection() {
        let f = CycloField::new(1, 2);
        let g = RatFunc::new(Poly::one(), Poly::from_ints(&[(1, 1), (0, 1)]));
        assert!(f.from_ratfunc(&g).is_none());
        assert!(CycloField::new(1, 3).from_ratfunc(&g).is_some());
    }

    #[test]
    fn reduces_fraction() {
        assert_eq!(CycloField::new(2, 4).point(), (1, 2));
        assert_eq!(CycloField::new(-1, 3).point(), (2, 3));
    }
}

//! Dyadic interval arithmetic with outward rounding.
//!
//! Enclosures of `π`, `cos` and `sin` at rational multiples of a full turn,
//! and of Laurent polynomials evaluated on the unit circle. Every endpoint
//! is a dyadic rational `m / 2^bits`; lower endpoints round down and upper
//! endpoints round up.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::Poly;
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

fn pow2(bits: u32) -> Rational {
    Rational::from_integer(BigInt::one() << bits)
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// `Some(sign)` when the interval excludes zero.
    pub fn certified_sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Widens both endpoints to multiples of `2^{-bits}`.
    pub fn round_out(&self, bits: u32) -> Self {
        let s = pow2(bits);
        Interval {
            lo: (&self.lo * &s).floor() / &s,
            hi: (&self.hi * &s).ceil() / &s,
        }
    }

    pub fn add(&self, o: &Interval) -> Self {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Interval) -> Self {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, o: &Interval) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Symmetric widening by `r ≥ 0`.
    pub fn widen(&self, r: &Rational) -> Self {
        Interval {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn contains(&self, re: &Rational, im: &Rational) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    /// Larger of the two component widths.
    pub fn width(&self) -> Rational {
        self.re.width().max(self.im.width())
    }
}

fn arctan_inv(k: u64, bits: u32) -> Interval {
    // arctan(1/k) = Σ (-1)^j / ((2j+1) k^{2j+1}); alternating, decreasing terms.
    let k = BigInt::from(k);
    let k2 = Rational::from_integer(&k * &k);
    let eps = Rational::one() / pow2(bits + 4);
    let mut power = Interval::point(Rational::new(BigInt::one(), k.clone()));
    let mut sum = Interval::zero();
    let mut j: u64 = 0;
    loop {
        let term = power
            .scale(&Rational::new(BigInt::one(), BigInt::from(2 * j + 1)))
            .round_out(bits + 8);
        if term.hi < eps {
            return sum.widen(&term.hi).round_out(bits + 4);
        }
        sum = if j % 2 == 0 {
            sum.add(&term)
        } else {
            sum.sub(&term)
        };
        power = power.scale(&(Rational::one() / &k2)).round_out(bits + 8);
        j += 1;
    }
}

/// Enclosure of `π` with width `O(2^{-bits})`.
pub fn pi(bits: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&bits) {
        return v.clone();
    }
    let a = arctan_inv(5, bits + 8).scale(&Rational::from_integer(16.into()));
    let b = arctan_inv(239, bits + 8).scale(&Rational::from_integer(4.into()));
    let v = a.sub(&b).round_out(bits + 4);
    cache.lock().unwrap().insert(bits, v.clone());
    v
}

/// Taylor enclosures of `(cos x, sin x)` for an interval `x ⊂ [0, 1]`.
fn cos_sin_small(x: &Interval, bits: u32) -> (Interval, Interval) {
    let eps = Rational::one() / pow2(bits + 4);
    let mut term = Interval::point(Rational::one()); // x^n / n!
    let mut cos = Interval::zero();
    let mut sin = Interval::zero();
    let mut n: u64 = 0;
    loop {
        if term.hi < eps && n > 2 {
            // Remaining terms alternate in each series and decrease, so the
            // current magnitude bounds the tail of both.
            let r = term.hi.clone();
            return (cos.widen(&r).round_out(bits), sin.widen(&r).round_out(bits));
        }
        match n % 4 {
            0 => cos = cos.add(&term),
            1 => sin = sin.add(&term),
            2 => cos = cos.sub(&term),
            _ => sin = sin.sub(&term),
        }
        n += 1;
        term = term
            .mul(x)
            .scale(&Rational::new(BigInt::one(), BigInt::from(n)))
            .round_out(bits + 8);
    }
}

/// Enclosures of `(cos 2πf, sin 2πf)` for rational `f`.
pub fn cos_sin_turn(f: &Rational, bits: u32) -> (Interval, Interval) {
    let one = Rational::one();
    let half = Rational::new(1.into(), 2.into());
    let quarter = Rational::new(1.into(), 4.into());
    let eighth = Rational::new(1.into(), 8.into());
    let mut f = f - f.floor();
    // Fold into [0, 1/8] with exact symmetries, tracking sign and swap.
    let mut sin_sign = false;
    let mut cos_sign = false;
    let mut swap = false;
    if f > half {
        f = &one - &f;
        sin_sign = true;
    }
    if f > quarter {
        f = &half - &f;
        cos_sign = true;
    }
    if f > eighth {
        f = &quarter - &f;
        swap = true;
    }
    let two_pi = pi(bits + 8).scale(&Rational::from_integer(2.into()));
    let x = two_pi.scale(&f);
    let (mut c, mut s) = cos_sin_small(&x, bits + 4);
    if swap {
        std::mem::swap(&mut c, &mut s);
    }
    if cos_sign {
        c = c.neg();
    }
    if sin_sign {
        s = s.neg();
    }
    (c.round_out(bits), s.round_out(bits))
}

/// Certified enclosure of `p(e^{2πi a/b})`.
pub fn eval_on_circle(p: &Poly, a: i64, b: u64, precision: u32) -> ComplexInterval {
    assert!(b > 0, "denominator must be positive");
    let terms = p.terms().count().max(1) as u32;
    let guard = 16 + 32 - terms.leading_zeros();
    let bits = precision + guard;
    let b_int = b as i64;
    let mut cache: HashMap<i64, (Interval, Interval)> = HashMap::new();
    let mut re = Interval::zero();
    let mut im = Interval::zero();
    for (e, c) in p.terms() {
        let j = (a as i128 * e as i128).mod_floor(&(b_int as i128)) as i64;
        let (cs, sn) = cache
            .entry(j)
            .or_insert_with(|| cos_sin_turn(&Rational::new(j.into(), b_int.into()), bits))
            .clone();
        re = re.add(&cs.scale(c));
        im = im.add(&sn.scale(c));
    }
    ComplexInterval {
        re: re.round_out(precision + 2),
        im: im.round_out(precision + 2),
    }
}

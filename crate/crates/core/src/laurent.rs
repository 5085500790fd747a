//! Laurent polynomials in `t`, the Conway variable, and square detection.
//!
//! A [`LaurentPoly`] is a finitely supported map from exponents to nonzero
//! coefficients. The Conway variable is fixed as `z = t^{-1/2} - t^{1/2}`,
//! so `z² = t⁻¹ - 2 + t` and `-z² = (1-t)(1-t⁻¹)`; every module uses
//! [`z_squared`] for that constant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dense::{self, QDense};
use crate::error::{Error, Result};
use crate::interval::{self, ComplexInterval};
use crate::scalar::{ExactDiv, Field, Involution, Rational, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<T> {
    coeffs: BTreeMap<i64, T>,
}

impl<T: Ring> LaurentPoly<T> {
    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let mut coeffs: BTreeMap<i64, T> = BTreeMap::new();
        for (e, c) in terms {
            let slot = coeffs.entry(e).or_insert_with(T::zero);
            *slot = slot.clone() + c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::from_terms([(0, c)])
    }

    pub fn monomial(c: T, exp: i64) -> Self {
        Self::from_terms([(exp, c)])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeff(&self, exp: i64) -> T {
        self.coeffs.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &T)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.values().next_back()
    }

    /// Support width `max - min`, or `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, x)| (*e, x.clone() * c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// Replaces `t` by `t⁻¹`.
    pub fn involute(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.involute() == *self
    }

    /// Sum of coefficients, i.e. the value at `t = 1`.
    pub fn value_at_one(&self) -> T {
        self.coeffs.values().cloned().fold(T::zero(), |a, c| a + c)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> LaurentPoly<U> {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(e, c)| (*e, f(c))))
    }
}

impl<T: Field> LaurentPoly<T> {
    pub fn eval(&self, x: &T) -> T {
        let inv = if x.is_zero() { T::zero() } else { x.inv() };
        self.coeffs.iter().fold(T::zero(), |acc, (e, c)| {
            let base = if *e >= 0 { x.clone() } else { inv.clone() };
            let mut p = T::one();
            for _ in 0..e.unsigned_abs() {
                p = p * base.clone();
            }
            acc + c.clone() * p
        })
    }
}

impl<T: Ring> Zero for LaurentPoly<T> {
    fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for LaurentPoly<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Ring> Add for LaurentPoly<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_terms(self.coeffs.into_iter().chain(rhs.coeffs))
    }
}

impl<T: Ring> Neg for LaurentPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<T: Ring> Sub for LaurentPoly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Ring> Mul for LaurentPoly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out: BTreeMap<i64, T> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                let slot = out.entry(e1 + e2).or_insert_with(T::zero);
                *slot = slot.clone() + c1.clone() * c2.clone();
            }
        }
        out.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs: out }
    }
}

impl<'a, T: Ring> Add for &'a LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, rhs: Self) -> LaurentPoly<T> {
        self.clone() + rhs.clone()
    }
}

impl<'a, T: Ring> Sub for &'a LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, rhs: Self) -> LaurentPoly<T> {
        self.clone() - rhs.clone()
    }
}

impl<'a, T: Ring> Mul for &'a LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: Self) -> LaurentPoly<T> {
        self.clone() * rhs.clone()
    }
}

impl<T: Ring> Involution for LaurentPoly<T> {
    fn conj(&self) -> Self {
        self.involute()
    }
}

impl<T: Ring + ExactDiv> ExactDiv for LaurentPoly<T> {
    /// Long division from the top; `None` unless the remainder vanishes.
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        let (rmax, rmin) = (rhs.max_exp()?, rhs.min_exp()?);
        let lead = rhs.coeff(rmax);
        let mut rem = self.clone();
        let mut quot: Vec<(i64, T)> = Vec::new();
        while let Some(top) = rem.max_exp() {
            let low = rem.min_exp().unwrap();
            if top - rmax < low - rmin {
                return None;
            }
            let c = rem.coeff(top).exact_div(&lead)?;
            let e = top - rmax;
            rem = rem - rhs.shift(e).scale(&c);
            quot.push((e, c));
        }
        Some(Self::from_terms(quot))
    }
}

/// Rational-coefficient Laurent polynomial; the carrier of Alexander polynomials.
pub type Poly = LaurentPoly<Rational>;

/// `z² = t⁻¹ - 2 + t` for `z = t^{-1/2} - t^{1/2}`.
pub fn z_squared() -> Poly {
    Poly::from_terms([
        (-1, Rational::one()),
        (0, Rational::from_integer(BigInt::from(-2))),
        (1, Rational::one()),
    ])
}

/// `1 - t`.
pub fn one_minus_t() -> Poly {
    Poly::from_terms([(0, Rational::one()), (1, -Rational::one())])
}

impl Poly {
    pub fn from_ints(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, Rational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Dense coefficients of `t^{-min} · self` (an ordinary polynomial with
    /// nonzero constant term), together with `min`.
    pub fn to_dense(&self) -> (QDense, i64) {
        let Some(lo) = self.min_exp() else {
            return (Vec::new(), 0);
        };
        let hi = self.max_exp().unwrap();
        let mut out = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.coeffs {
            out[(e - lo) as usize] = c.clone();
        }
        (out, lo)
    }

    pub fn from_dense(d: &[Rational], offset: i64) -> Self {
        Self::from_terms(
            d.iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + offset, c.clone())),
        )
    }

    /// True when `self = ±t^k · other` for some integer `k`.
    pub fn equal_up_to_units(&self, other: &Poly) -> bool {
        match (self.min_exp(), other.min_exp()) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                let s = other.shift(a - b);
                *self == s || *self == -s
            }
            _ => false,
        }
    }

    /// Certified enclosure of the value at `e^{2πi a/b}`.
    ///
    /// `precision` is the number of fractional bits carried; the enclosure
    /// width is `O(2^{-precision})`.
    pub fn eval_circle(&self, a: i64, b: u64, precision: u32) -> ComplexInterval {
        interval::eval_on_circle(self, a, b, precision)
    }

    /// Rewrites a symmetric polynomial as a polynomial in `z` (even powers only).
    pub fn to_conway(&self) -> Result<ConwayPoly> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric(self.to_string()));
        }
        let z2 = z_squared();
        let mut rem = self.clone();
        let mut out = BTreeMap::new();
        while let Some(top) = rem.max_exp() {
            let c = rem.coeff(top);
            if !c.is_integer() {
                return Err(Error::NotInImage(self.to_string()));
            }
            // (z²)^top has leading term t^top with coefficient 1.
            rem = rem - z2.pow(top as u32).scale(&c);
            out.insert(2 * top as u32, c.to_integer());
        }
        Ok(ConwayPoly::from_map(out))
    }

    /// Returns `F` with `self = ±t^k F²`, `F` symmetric and `F(1) ≥ 0`, if one exists.
    pub fn is_square_up_to_units(&self) -> Option<Poly> {
        let (dense, _) = self.to_dense();
        let n = dense::degree(&dense)?;
        if n % 4 != 0 {
            return None;
        }
        let half = n / 2;
        for sign in [Rational::one(), -Rational::one()] {
            let target: QDense = dense.iter().map(|c| c * &sign).collect();
            if let Some(g) = dense_sqrt(&target, half) {
                let f = Poly::from_dense(&g, -(half as i64) / 2);
                if !f.is_symmetric() {
                    continue;
                }
                let f = if f.value_at_one().is_negative()
                    || (f.value_at_one().is_zero()
                        && f.leading_coeff().is_some_and(|c| c.is_negative()))
                {
                    -f
                } else {
                    f
                };
                return Some(f);
            }
        }
        None
    }
}

/// Square root of a dense polynomial of degree `2·half`, if it is a square over Q.
fn dense_sqrt(p: &[Rational], half: usize) -> Option<QDense> {
    let lead = &p[2 * half];
    let root = rational_sqrt(lead)?;
    let mut g = vec![Rational::zero(); half + 1];
    g[half] = root.clone();
    let two_root = &root + &root;
    // Coefficient of t^{half + k} in g² determines g[k] from the top down.
    for k in (0..half).rev() {
        let mut acc = p[half + k].clone();
        for i in (k + 1)..=half {
            let j = half + k - i;
            if j > half || j <= k {
                continue;
            }
            acc -= &g[i] * &g[j];
        }
        g[k] = acc / &two_root;
    }
    (dense::q_mul(&g, &g) == {
        let mut q = p.to_vec();
        dense::trim(&mut q);
        q
    })
    .then_some(g)
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

impl fmt::Display for Poly {
    /// Terms in descending exponent order, e.g. `-2*t^1 + 5*t^0 + -2*t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0*t^0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| format!("{c}*t^{e}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        for (i, raw) in s.split(" + ").enumerate() {
            let bad = || Error::Parse(format!("term {}: expected coeff*t^exp, got {raw:?}", i + 1));
            let (c, e) = raw.split_once("*t^").ok_or_else(bad)?;
            let c: Rational = c.parse().map_err(|_| bad())?;
            let e: i64 = e.parse().map_err(|_| bad())?;
            terms.push((e, c));
        }
        Ok(Poly::from_terms(terms))
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Conway polynomial: integer coefficients indexed by the power of `z`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ConwayPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl ConwayPoly {
    pub fn from_map(mut coeffs: BTreeMap<u32, BigInt>) -> Self {
        coeffs.retain(|_, c| !c.is_zero());
        ConwayPoly { coeffs }
    }

    pub fn from_ints(terms: &[(u32, i64)]) -> Self {
        Self::from_map(terms.iter().map(|&(e, c)| (e, BigInt::from(c))).collect())
    }

    pub fn coeff(&self, power: u32) -> BigInt {
        self.coeffs.get(&power).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn sub(&self, other: &ConwayPoly) -> ConwayPoly {
        let mut out = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            *out.entry(*e).or_default() -= c;
        }
        Self::from_map(out)
    }

    /// Multiplies by `z^k`.
    pub fn shift_up(&self, k: u32) -> ConwayPoly {
        Self::from_map(
            self.coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        )
    }

    /// Divides by `z`; `None` if there is a constant term.
    pub fn div_z(&self) -> Option<ConwayPoly> {
        if !self.coeff(0).is_zero() {
            return None;
        }
        Some(Self::from_map(
            self.coeffs
                .iter()
                .map(|(e, c)| (e - 1, c.clone()))
                .collect(),
        ))
    }

    /// Substitutes `z² = t⁻¹ - 2 + t`; only defined when every power is even.
    pub fn to_laurent(&self) -> Option<Poly> {
        let z2 = z_squared();
        let mut out = Poly::zero();
        for (e, c) in &self.coeffs {
            if e % 2 == 1 {
                return None;
            }
            out = out + z2.pow(e / 2).scale(&Rational::from_integer(c.clone()));
        }
        Some(out)
    }
}

impl fmt::Display for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| format!("{c}*z^{e}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> Poly {
        Poly::from_ints(terms)
    }

    fn trefoil() -> Poly {
        p(&[(1, 1), (0, -1), (-1, 1)])
    }

    #[test]
    fn zero_stripping_and_span() {
        let q = p(&[(3, 1), (3, -1), (-2, 4)]);
        assert_eq!(q, p(&[(-2, 4)]));
        assert_eq!(q.span(), Some(0));
        assert!(p(&[(1, 1), (1, -1)]).is_zero());
        assert_eq!(Poly::zero().span(), None);
    }

    #[test]
    fn involution_of_symmetric_polynomial() {
        let q = p(&[(1, -2), (0, 5), (-1, -2)]);
        assert_eq!(q.involute(), q);
        let r = p(&[(2, 3), (-1, 1)]);
        assert_eq!(r.involute(), p(&[(-2, 3), (1, 1)]));
        assert_eq!(r.involute().involute(), r);
    }

    #[test]
    fn product_matches_convolution() {
        // brute-force convolution over supports
        let a = p(&[(1, 1), (0, -1), (-1, 1)]);
        let b = p(&[(1, 1), (0, 1), (-1, 1)]);
        let mut expected = BTreeMap::new();
        for (e1, c1) in a.terms() {
            for (e2, c2) in b.terms() {
                *expected.entry(e1 + e2).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        assert_eq!(a * b, Poly::from_terms(expected));
    }

    #[test]
    fn conway_examples() {
        assert_eq!(
            Poly::one().to_conway().unwrap(),
            ConwayPoly::from_ints(&[(0, 1)])
        );
        assert_eq!(
            trefoil().to_conway().unwrap(),
            ConwayPoly::from_ints(&[(2, 1), (0, 1)])
        );
        assert_eq!(
            p(&[(1, -1), (0, 3), (-1, -1)]).to_conway().unwrap(),
            ConwayPoly::from_ints(&[(2, -1), (0, 1)])
        );
    }

    #[test]
    fn conway_rejects_bad_input() {
        assert!(matches!(
            p(&[(1, 1)]).to_conway(),
            Err(Error::NotSymmetric(_))
        ));
        let half = Poly::from_terms([(0, Rational::new(1.into(), 2.into()))]);
        assert!(matches!(half.to_conway(), Err(Error::NotInImage(_))));
    }

    #[test]
    fn square_detection() {
        let sq = trefoil() * trefoil();
        assert_eq!(sq, p(&[(2, 1), (1, -2), (0, 3), (-1, -2), (-2, 1)]));
        assert_eq!(sq.is_square_up_to_units(), Some(trefoil()));
        assert_eq!(sq.shift(5).is_square_up_to_units(), Some(trefoil()));
        assert_eq!((-sq).is_square_up_to_units(), Some(trefoil()));
        assert_eq!(Poly::one().is_square_up_to_units(), Some(Poly::one()));
        assert_eq!(trefoil().is_square_up_to_units(), None);
        assert_eq!(p(&[(0, 2)]).is_square_up_to_units(), None);
    }

    #[test]
    fn text_roundtrip() {
        let q = p(&[(1, -2), (0, 5), (-1, -2)]);
        assert_eq!(q.to_string(), "-2*t^1 + 5*t^0 + -2*t^-1");
        assert_eq!("-2*t^1 + 5*t^0 + -2*t^-1".parse::<Poly>().unwrap(), q);
        assert_eq!(Poly::one().to_string(), "1*t^0");
        assert!("2t + 1".parse::<Poly>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = trefoil();
        let b = p(&[(3, 2), (0, -1)]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(prod.exact_div(&a), Some(b));
        assert_eq!(a.exact_div(&p(&[(1, 1), (0, 1)])), None);
    }

    #[test]
    fn generic_over_float_coefficients() {
        let q: LaurentPoly<f64> = LaurentPoly::from_terms([(1, 1.0), (0, -1.0), (-1, 1.0)]);
        assert_eq!(q.eval(&2.0), 2.0 - 1.0 + 0.5);
        let qi: LaurentPoly<i64> = LaurentPoly::from_terms([(1, 1), (0, -1), (-1, 1)]);
        assert_eq!(qi.value_at_one(), 1);
    }
}

//! The rational function field `Q(t)` with involution `t ↦ t⁻¹`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dense;
use crate::error::{Error, Result};
use crate::laurent::Poly;
use crate::scalar::{ExactDiv, Field, Involution, Rational};

/// `num / den` in lowest terms; `den` is monic with minimal exponent 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (nd, no) = num.to_dense();
        let (dd, doff) = den.to_dense();
        let (nd, dd) = if dd.len() == 1 {
            (nd, dd)
        } else {
            let g = dense::q_gcd(&nd, &dd);
            if g.len() == 1 {
                (nd, dd)
            } else {
                (dense::q_divrem(&nd, &g).0, dense::q_divrem(&dd, &g).0)
            }
        };
        let lc = dd.last().unwrap().clone();
        let nd: Vec<Rational> = nd.iter().map(|c| c / &lc).collect();
        let dd: Vec<Rational> = dd.iter().map(|c| c / &lc).collect();
        RatFunc {
            num: Poly::from_dense(&nd, no - doff),
            den: Poly::from_dense(&dd, 0),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::constant(Rational::from_integer(BigInt::from(n))))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(Poly::constant(r))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn involute(&self) -> Self {
        Self::new(self.num.involute(), self.den.involute())
    }

    pub fn is_symmetric(&self) -> bool {
        self.involute() == *self
    }

    /// `f · f̄`, always fixed by the involution.
    pub fn norm(&self) -> Self {
        self.clone() * self.involute()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl Add for RatFunc {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            if self.den.is_one() {
                return Self::from_poly(self.num + rhs.num);
            }
            return Self::new(self.num + rhs.num, self.den);
        }
        Self::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Neg for RatFunc {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for RatFunc {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num * rhs.num);
        }
        Self::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for RatFunc {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        Self::new(self.num * rhs.den, self.den * rhs.num)
    }
}

impl<'a> Add for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: Self) -> RatFunc {
        self.clone() + rhs.clone()
    }
}

impl<'a> Sub for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: Self) -> RatFunc {
        self.clone() - rhs.clone()
    }
}

impl<'a> Mul for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: Self) -> RatFunc {
        self.clone() * rhs.clone()
    }
}

impl<'a> Div for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: Self) -> RatFunc {
        self.clone() / rhs.clone()
    }
}

impl Field for RatFunc {}

impl ExactDiv for RatFunc {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

impl Involution for RatFunc {
    fn conj(&self) -> Self {
        self.involute()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let (n, d) = rest
                .split_once(")/(")
                .ok_or_else(|| Error::Parse(format!("bad rational function {s:?}")))?;
            let d = d
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("bad rational function {s:?}")))?;
            let den: Poly = d.parse()?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Self::new(n.parse()?, den))
        } else {
            Ok(Self::from_poly(s.parse()?))
        }
    }
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::one_minus_t;

    fn p(terms: &[(i64, i64)]) -> Poly {
        Poly::from_ints(terms)
    }

    #[test]
    fn canonical_form_reduces_and_normalizes() {
        // (t^2 - 1) / (2t - 2) = (t + 1)/2
        let f = RatFunc::new(p(&[(2, 1), (0, -1)]), p(&[(1, 2), (0, -2)]));
        assert!(f.is_poly());
        assert_eq!(
            f.num(),
            &Poly::from_terms([
                (1, Rational::new(1.into(), 2.into())),
                (0, Rational::new(1.into(), 2.into()))
            ])
        );
        // t^3 / t^5 = t^-2
        let g = RatFunc::new(p(&[(3, 1)]), p(&[(5, 1)]));
        assert_eq!(g, RatFunc::from_poly(p(&[(-2, 1)])));
        // den keeps min exponent 0 and is monic
        let h = RatFunc::new(p(&[(0, 1)]), p(&[(3, -2), (1, 4)]));
        assert_eq!(h.den().min_exp(), Some(0));
        assert_eq!(h.den().leading_coeff(), Some(&Rational::one()));
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(p(&[(1, 1), (0, -1), (-1, 1)]), p(&[(1, 1), (0, 3)]));
        let b = RatFunc::new(p(&[(2, 1), (0, 1)]), p(&[(0, 2), (1, -1)]));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&a / &a, RatFunc::one());
        assert_eq!(a.involute().involute(), a);
    }

    #[test]
    fn norm_of_one_minus_t_is_minus_z_squared() {
        let n = RatFunc::from_poly(one_minus_t()).norm();
        assert_eq!(n, RatFunc::from_poly(-crate::laurent::z_squared()));
        assert!(n.is_symmetric());
    }

    #[test]
    fn text_roundtrip() {
        let a = RatFunc::new(p(&[(1, 1), (0, -1)]), p(&[(1, 1), (0, 3)]));
        let s = a.to_string();
        assert_eq!(s.parse::<RatFunc>().unwrap(), a);
        assert_eq!("1*t^0".parse::<RatFunc>().unwrap(), RatFunc::one());
    }
}

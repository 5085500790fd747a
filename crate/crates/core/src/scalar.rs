//! Scalar traits shared by the polynomial and matrix layers.
//!
//! Everything above this module is written against [`Ring`], [`Field`],
//! [`ExactDiv`] and [`Involution`] so the same matrix code runs over
//! machine integers, big integers, rationals, Laurent polynomials and the
//! rational function field.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Commutative ring with identity.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T: Clone + Integer + Debug + num_traits::Signed> Field for Ratio<T> {}
impl Field for f64 {}
impl Field for f32 {}

/// Division that is only defined when the quotient lies in the ring.
///
/// Used by fraction-free elimination (Bareiss), where every division is
/// known to be exact.
pub trait ExactDiv: Sized {
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
}

macro_rules! exact_div_int {
    ($($t:ty),*) => {$(
        impl ExactDiv for $t {
            fn exact_div(&self, rhs: &Self) -> Option<Self> {
                if rhs.is_zero() {
                    return None;
                }
                let (q, r) = self.div_rem(rhs);
                r.is_zero().then_some(q)
            }
        }
    )*};
}

exact_div_int!(i32, i64, i128, BigInt);

impl<T: Clone + Integer> ExactDiv for Ratio<T> {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self.clone() / rhs.clone())
    }
}

impl ExactDiv for f64 {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0.0).then(|| self / rhs)
    }
}

/// An involutive ring automorphism `x ↦ x̄`.
///
/// Identity on coefficient rings; `t ↦ t⁻¹` on Laurent polynomials and
/// rational functions.
pub trait Involution {
    fn conj(&self) -> Self;
}

macro_rules! trivial_involution {
    ($($t:ty),*) => {$(
        impl Involution for $t {
            fn conj(&self) -> Self {
                self.clone()
            }
        }
    )*};
}

trivial_involution!(i32, i64, i128, f32, f64, BigInt);

impl<T: Clone + Integer> Involution for Ratio<T> {
    fn conj(&self) -> Self {
        self.clone()
    }
}

/// Exact rational numbers with big-integer numerator and denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

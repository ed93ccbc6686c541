//! Scalar abstractions shared by the exact and floating-point code paths.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Float, FloatConst, Num, Signed};

/// Anything a deck can be computed over: machine integers, big integers,
/// rationals, floats.
pub trait Scalar: Clone + Debug + PartialEq + Num + Send + Sync {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Send + Sync {}

/// Signed exact integers with an overflow-aware fused multiply-add.
///
/// Machine types report overflow with `None` so callers can retry in
/// [`BigInt`].
pub trait ExactInt: Scalar + Signed {
    /// `self + a * b`, or `None` on overflow.
    fn checked_mul_add(&self, a: &Self, b: &Self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    fn to_big(&self) -> BigInt;
}

macro_rules! impl_exact_int {
    ($t:ty) => {
        impl ExactInt for $t {
            #[inline]
            fn checked_mul_add(&self, a: &Self, b: &Self) -> Option<Self> {
                a.checked_mul(*b).and_then(|p| self.checked_add(p))
            }

            #[inline]
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn to_big(&self) -> BigInt {
                BigInt::from(*self)
            }
        }
    };
}

impl_exact_int!(i64);
impl_exact_int!(i128);

impl ExactInt for BigInt {
    fn checked_mul_add(&self, a: &Self, b: &Self) -> Option<Self> {
        Some(self + a * b)
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Floating-point scalars used by the DFT and the real-valued demos.
pub trait Real: Float + FloatConst + Scalar {}

impl<T> Real for T where T: Float + FloatConst + Scalar {}

/// `exp(i * theta)`.
pub fn unit<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

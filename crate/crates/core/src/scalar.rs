//! Scalar abstractions shared by every numeric routine in the crate.
//!
//! Two levels are distinguished. [`Field`] covers the exact ring/field
//! operations that polynomial invariants need, so those can also be
//! evaluated over exact rationals. [`Scalar`] adds the transcendental
//! functions used by the trigonometric eigenvalue formula.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational numbers with 128-bit numerator and denominator.
///
/// Used by tests and oracles on small integer inputs; arithmetic panics on
/// overflow in debug builds.
pub type Rational = Ratio<i128>;

/// Arithmetic needed by the polynomial parts of the library.
pub trait Field:
    Copy
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i32(n: i32) -> Self;

    fn abs(self) -> Self;
}

/// A real number type supporting the full eigenvalue pipeline.
pub trait Scalar: Field {
    /// Gap between 1 and the next representable number.
    fn epsilon() -> f64;

    fn pi() -> Self;

    fn from_f64(x: f64) -> Self;

    /// Nearest working-precision value.
    fn to_f64(self) -> f64;

    fn sqrt(self) -> Self;

    fn sin(self) -> Self;

    fn cos(self) -> Self;

    fn acos(self) -> Self;

    /// Four-quadrant inverse tangent of `self / x`.
    fn atan2(self, x: Self) -> Self;

    /// -1, 0 or +1.
    fn signum(self) -> Self {
        if self > Self::zero() {
            Self::one()
        } else if self < Self::zero() {
            -Self::one()
        } else {
            Self::zero()
        }
    }

    fn is_finite(self) -> bool;
}

macro_rules! impl_float {
    ($t:ty) => {
        impl Field for $t {
            #[inline]
            fn from_i32(n: i32) -> Self {
                n as $t
            }

            #[inline]
            fn abs(self) -> Self {
                <$t>::abs(self)
            }
        }

        impl Scalar for $t {
            #[inline]
            fn epsilon() -> f64 {
                <$t>::EPSILON as f64
            }

            #[inline]
            fn pi() -> Self {
                std::f64::consts::PI as $t
            }

            #[inline]
            fn from_f64(x: f64) -> Self {
                x as $t
            }

            #[inline]
            fn to_f64(self) -> f64 {
                self as f64
            }

            #[inline]
            fn sqrt(self) -> Self {
                <$t>::sqrt(self)
            }

            #[inline]
            fn sin(self) -> Self {
                <$t>::sin(self)
            }

            #[inline]
            fn cos(self) -> Self {
                <$t>::cos(self)
            }

            #[inline]
            fn acos(self) -> Self {
                <$t>::acos(self)
            }

            #[inline]
            fn atan2(self, x: Self) -> Self {
                <$t>::atan2(self, x)
            }

            #[inline]
            fn is_finite(self) -> bool {
                <$t>::is_finite(self)
            }
        }
    };
}

impl_float!(f32);
impl_float!(f64);

impl Field for Rational {
    fn from_i32(n: i32) -> Self {
        Ratio::from_integer(n as i128)
    }

    fn abs(self) -> Self {
        Signed::abs(&self)
    }
}

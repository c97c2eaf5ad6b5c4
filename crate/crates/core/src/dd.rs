//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`
//! values carrying roughly 106 significand bits.
//!
//! Only what the reference computations need is provided. The elementary
//! functions start from the `f64` result and apply Newton corrections, or
//! use reduced-argument Taylor series, which keeps them near 2^-104
//! relative accuracy.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const PI: Self = Self {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const FRAC_PI_2: Self = Self {
        hi: std::f64::consts::FRAC_PI_2,
        lo: 6.123_233_995_736_766e-17,
    };

    /// Builds a normalized value from an arbitrary pair.
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Exact sum of two `f64` values.
    pub fn sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    /// Exact product of two `f64` values.
    pub fn product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self::new(hi, lo)
    }

    pub fn is_nan(self) -> bool {
        self.hi.is_nan() || self.lo.is_nan()
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    /// sin and cos of a reduced argument |r| <= pi/4 by Taylor series.
    fn sin_cos_reduced(r: Self) -> (Self, Self) {
        let r2 = r * r;
        let mut sin = r;
        let mut term = r;
        let mut n = 1;
        loop {
            term = -(term * r2) / Self::from((2 * n * (2 * n + 1)) as f64);
            sin += term;
            n += 1;
            if term.hi.abs() < 1e-36 || n > 40 {
                break;
            }
        }
        let mut cos = Self::ONE;
        let mut term = Self::ONE;
        let mut n = 1;
        loop {
            term = -(term * r2) / Self::from((2 * n * (2 * n - 1)) as f64);
            cos += term;
            n += 1;
            if term.hi.abs() < 1e-36 || n > 40 {
                break;
            }
        }
        (sin, cos)
    }

    pub fn sin_cos(self) -> (Self, Self) {
        if !self.hi.is_finite() {
            return (Self::from(f64::NAN), Self::from(f64::NAN));
        }
        let k = (self.hi / std::f64::consts::FRAC_PI_2).round();
        let r = self - Self::FRAC_PI_2.mul_f64(k);
        let (s, c) = Self::sin_cos_reduced(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

impl From<f64> for DoubleDouble {
    #[inline]
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
}

impl From<DoubleDouble> for f64 {
    #[inline]
    fn from(x: DoubleDouble) -> f64 {
        x.hi + x.lo
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        if !q1.is_finite() {
            return Self::from(q1);
        }
        let r = self - rhs.mul_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs.mul_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from(q3)
    }
}

impl AddAssign for DoubleDouble {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for DoubleDouble {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for DoubleDouble {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl PartialEq for DoubleDouble {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::ZERO
    }

    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::ONE
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} + {:e}", self.hi, self.lo)
    }
}

impl Field for DoubleDouble {
    fn from_i32(n: i32) -> Self {
        Self::from(n as f64)
    }

    fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }
}

impl Scalar for DoubleDouble {
    fn epsilon() -> f64 {
        // 2^-104
        4.930_380_657_631_324e-32
    }

    fn pi() -> Self {
        Self::PI
    }

    fn from_f64(x: f64) -> Self {
        Self::from(x)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Self::ZERO
            } else {
                Self::from(f64::NAN)
            };
        }
        let s = Self::from(self.hi.sqrt());
        s + (self - s * s) / (s + s)
    }

    fn sin(self) -> Self {
        self.sin_cos().0
    }

    fn cos(self) -> Self {
        self.sin_cos().1
    }

    fn acos(self) -> Self {
        let one = Self::ONE;
        let s = ((one - self) * (one + self)).sqrt();
        s.atan2(self)
    }

    fn atan2(self, x: Self) -> Self {
        let y = self;
        if y.is_zero() {
            return if x.hi < 0.0 { Self::PI } else { Self::ZERO };
        }
        if x.is_nan() || y.is_nan() {
            return Self::from(f64::NAN);
        }
        let mut z = Self::from(y.hi.atan2(x.hi));
        for _ in 0..2 {
            let (s, c) = z.sin_cos();
            z += (y * c - x * s) / (x * c + y * s);
        }
        z
    }

    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn add_sub_round_trip_over_wide_magnitudes() {
        trait MaxDd {
            fn max(self, o: Self) -> Self;
        }
        impl MaxDd for DoubleDouble {
            fn max(self, o: Self) -> Self {
                if self > o {
                    self
                } else {
                    o
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let a = DoubleDouble::new(
                10f64.powf(rng.random_range(-10.0..10.0)),
                10f64.powf(rng.random_range(-30.0..-20.0)),
            );
            let b = DoubleDouble::from(10f64.powf(rng.random_range(-10.0..10.0)));
            // relative to the operand magnitudes: the low word of `a` is lost
            // whenever |b| is many orders larger
            let err = (a + b - b - a).abs().to_f64();
            let mag = a.abs().max(b.abs()).to_f64();
            assert!(err <= 2f64.powi(-104) * mag, "{a} {b}");
        }
    }

    #[test]
    fn normalization_is_idempotent() {
        let x = DoubleDouble::new(1.0, 1e-17);
        let y = DoubleDouble::new(x.hi(), x.lo());
        assert_eq!(x, y);
    }

    #[test]
    fn one_third_times_three() {
        let third = DoubleDouble::ONE / DoubleDouble::from(3.0);
        let back = third * DoubleDouble::from(3.0);
        assert!((back - DoubleDouble::ONE).abs().to_f64() < 1e-31);
        // the low word carries information beyond f64
        assert!(third.lo() != 0.0);
    }

    #[test]
    fn sqrt_two_squared() {
        let two = DoubleDouble::from(2.0);
        let r = two.sqrt();
        assert!((r * r - two).abs().to_f64() < 1e-31);
    }

    #[test]
    fn trig_identities() {
        for &x in &[0.1, 0.5, 1.0, 2.0, 3.0, -2.5, 7.0] {
            let x = DoubleDouble::from(x);
            let (s, c) = x.sin_cos();
            assert!((s * s + c * c - DoubleDouble::ONE).abs().to_f64() < 1e-31);
            let back = s.atan2(c);
            // atan2 returns the principal value in (-pi, pi]
            let xf = x.to_f64();
            if xf.abs() < 3.1 {
                assert!((back - x).abs().to_f64() < 1e-31, "x = {xf}");
            }
        }
    }

    #[test]
    fn pi_thirds_cosine() {
        let c = (DoubleDouble::PI / DoubleDouble::from(3.0)).cos();
        assert!((c - DoubleDouble::from(0.5)).abs().to_f64() < 1e-31);
        let a = DoubleDouble::from(0.5).acos();
        assert!(
            (a * DoubleDouble::from(3.0) - DoubleDouble::PI)
                .abs()
                .to_f64()
                < 1e-31
        );
        assert_eq!(DoubleDouble::from(-1.0).acos(), DoubleDouble::PI);
        assert!(DoubleDouble::ONE.acos().to_f64().abs() < 1e-31);
    }

    #[test]
    fn ordering_uses_low_word() {
        let a = DoubleDouble::new(1.0, 1e-20);
        let b = DoubleDouble::new(1.0, -1e-20);
        assert!(b < a);
        assert!(a > DoubleDouble::ONE);
    }
}

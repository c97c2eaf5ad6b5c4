//! Forward-mode dual numbers carrying a gradient with respect to the nine
//! entries of a 3×3 matrix.
//!
//! The value part of every operation is computed exactly as the underlying
//! scalar would compute it, so a dual evaluation reproduces the plain
//! evaluation bit-for-bit.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Field, Scalar};

/// Number of independent variables: the entries of a 3×3 matrix, row-major.
pub const GRAD_DIM: usize = 9;

#[derive(Debug, Clone, Copy)]
pub struct Dual<T> {
    pub value: T,
    pub grad: [T; GRAD_DIM],
}

impl<T: Field> Dual<T> {
    pub fn constant(value: T) -> Self {
        Self {
            value,
            grad: [T::zero(); GRAD_DIM],
        }
    }

    /// A variable seeded with unit derivative along `index`.
    pub fn variable(value: T, index: usize) -> Self {
        let mut grad = [T::zero(); GRAD_DIM];
        grad[index] = T::one();
        Self { value, grad }
    }

    /// Chain rule for a unary function with derivative `d` at `self.value`.
    #[inline]
    fn chain(self, value: T, d: T) -> Self {
        Self {
            value,
            grad: self.grad.map(|g| g * d),
        }
    }
}

impl<T: Field> PartialEq for Dual<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Field> PartialOrd for Dual<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl<T: Field> Add for Dual<T> {
    type Output = Self;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        let mut grad = self.grad;
        for (g, r) in grad.iter_mut().zip(rhs.grad) {
            *g = *g + r;
        }
        Self {
            value: self.value + rhs.value,
            grad,
        }
    }
}

impl<T: Field> Sub for Dual<T> {
    type Output = Self;

    #[inline]
    fn sub(self, rhs: Self) -> Self {
        let mut grad = self.grad;
        for (g, r) in grad.iter_mut().zip(rhs.grad) {
            *g = *g - r;
        }
        Self {
            value: self.value - rhs.value,
            grad,
        }
    }
}

impl<T: Field> Mul for Dual<T> {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let mut grad = [T::zero(); GRAD_DIM];
        for (i, g) in grad.iter_mut().enumerate() {
            *g = self.grad[i] * rhs.value + self.value * rhs.grad[i];
        }
        Self {
            value: self.value * rhs.value,
            grad,
        }
    }
}

impl<T: Field> Div for Dual<T> {
    type Output = Self;

    #[inline]
    fn div(self, rhs: Self) -> Self {
        let value = self.value / rhs.value;
        let mut grad = [T::zero(); GRAD_DIM];
        for (i, g) in grad.iter_mut().enumerate() {
            *g = (self.grad[i] - value * rhs.grad[i]) / rhs.value;
        }
        Self { value, grad }
    }
}

impl<T: Field> Neg for Dual<T> {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        Self {
            value: -self.value,
            grad: self.grad.map(|g| -g),
        }
    }
}

impl<T: Field> Zero for Dual<T> {
    fn zero() -> Self {
        Self::constant(T::zero())
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl<T: Field> One for Dual<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Field> Field for Dual<T> {
    fn from_i32(n: i32) -> Self {
        Self::constant(T::from_i32(n))
    }

    fn abs(self) -> Self {
        if self.value < T::zero() {
            -self
        } else {
            self
        }
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn epsilon() -> f64 {
        T::epsilon()
    }

    fn pi() -> Self {
        Self::constant(T::pi())
    }

    fn from_f64(x: f64) -> Self {
        Self::constant(T::from_f64(x))
    }

    fn to_f64(self) -> f64 {
        self.value.to_f64()
    }

    fn sqrt(self) -> Self {
        let value = self.value.sqrt();
        let d = T::one() / (value + value);
        self.chain(value, d)
    }

    fn sin(self) -> Self {
        self.chain(self.value.sin(), self.value.cos())
    }

    fn cos(self) -> Self {
        self.chain(self.value.cos(), -self.value.sin())
    }

    fn acos(self) -> Self {
        let x = self.value;
        let d = -T::one() / ((T::one() - x * x).sqrt());
        self.chain(x.acos(), d)
    }

    fn atan2(self, x: Self) -> Self {
        // d atan2(y, x) = (x dy - y dx) / (x^2 + y^2)
        let y = self;
        let value = y.value.atan2(x.value);
        let r2 = x.value * x.value + y.value * y.value;
        let mut grad = [T::zero(); GRAD_DIM];
        for (i, g) in grad.iter_mut().enumerate() {
            *g = (x.value * y.grad[i] - y.value * x.grad[i]) / r2;
        }
        Self { value, grad }
    }

    fn is_finite(self) -> bool {
        self.value.is_finite() && self.grad.iter().all(|g| g.is_finite())
    }
}

//! Fixed-size 3×3 matrices and 3-vectors over any [`Field`].
//!
//! Every reduction (products, trace, determinant) accumulates left to right
//! in a fixed order, so rounding behaviour is reproducible.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Highest supported power in [`Mat3::pow`].
pub const MAX_POWER: u32 = 4;

/// A 3×3 matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Mat3<T> {
    rows: [[T; 3]; 3],
}

/// Three scalar components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Vec3<T>(pub [T; 3]);

impl<T> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self([x, y, z])
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }
}

impl<T: Copy> Vec3<T> {
    /// One-based component access.
    pub fn get(&self, k: usize) -> T {
        assert!((1..=3).contains(&k), "component index {k} outside 1..=3");
        self.0[k - 1]
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> Vec3<U> {
        Vec3(self.0.map(f))
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;

    fn index(&self, k: usize) -> &T {
        &self.0[k]
    }
}

impl<T: Copy> Mat3<T> {
    pub const fn from_rows(rows: [[T; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn from_row_major(e: [T; 9]) -> Self {
        Self {
            rows: [[e[0], e[1], e[2]], [e[3], e[4], e[5]], [e[6], e[7], e[8]]],
        }
    }

    pub fn rows(&self) -> [[T; 3]; 3] {
        self.rows
    }

    pub fn to_row_major(&self) -> [T; 9] {
        let r = &self.rows;
        [
            r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2],
        ]
    }

    /// One-based entry access, `A_ij` with `1 <= i, j <= 3`.
    pub fn entry(&self, i: usize, j: usize) -> T {
        assert!(
            (1..=3).contains(&i) && (1..=3).contains(&j),
            "entry ({i}, {j}) outside 1..=3"
        );
        self.rows[i - 1][j - 1]
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> Mat3<U> {
        Mat3 {
            rows: self.rows.map(|r| r.map(&f)),
        }
    }

    pub fn transpose(&self) -> Self {
        let r = &self.rows;
        Self::from_rows([
            [r[0][0], r[1][0], r[2][0]],
            [r[0][1], r[1][1], r[2][1]],
            [r[0][2], r[1][2], r[2][2]],
        ])
    }
}

impl<T: Field> Mat3<T> {
    pub fn zero() -> Self {
        Self::from_rows([[T::zero(); 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diag(T::one(), T::one(), T::one())
    }

    pub fn diag(a: T, b: T, c: T) -> Self {
        let z = T::zero();
        Self::from_rows([[a, z, z], [z, b, z], [z, z, c]])
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    /// `A^p` for `p <= 4`, computed as `A · A^(p-1)`.
    ///
    /// # Panics
    ///
    /// If `p` exceeds [`MAX_POWER`].
    pub fn pow(&self, p: u32) -> Self {
        assert!(p <= MAX_POWER, "matrix power {p} exceeds {MAX_POWER}");
        let mut acc = Self::identity();
        for _ in 0..p {
            acc = *self * acc;
        }
        acc
    }

    /// Fallible variant of [`Mat3::pow`].
    pub fn try_pow(&self, p: u32) -> Result<Self> {
        if p > MAX_POWER {
            return Err(Error::PowerOutOfRange(p));
        }
        Ok(self.pow(p))
    }

    pub fn trace(&self) -> T {
        let r = &self.rows;
        r[0][0] + r[1][1] + r[2][2]
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> T {
        let [[a11, a12, a13], [a21, a22, a23], [a31, a32, a33]] = self.rows;
        a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31)
            + a13 * (a21 * a32 - a22 * a31)
    }

    pub fn adjugate(&self) -> Self {
        let [[a11, a12, a13], [a21, a22, a23], [a31, a32, a33]] = self.rows;
        Self::from_rows([
            [
                a22 * a33 - a23 * a32,
                a13 * a32 - a12 * a33,
                a12 * a23 - a13 * a22,
            ],
            [
                a23 * a31 - a21 * a33,
                a11 * a33 - a13 * a31,
                a13 * a21 - a11 * a23,
            ],
            [
                a21 * a32 - a22 * a31,
                a12 * a31 - a11 * a32,
                a11 * a22 - a12 * a21,
            ],
        ])
    }

    /// Adjugate divided by the determinant.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        Ok(self.adjugate().map(|x| x / det))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for x in self.rows.iter().flatten() {
            let a = x.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Sum of absolute entries.
    pub fn l1_norm(&self) -> T {
        self.rows
            .iter()
            .flatten()
            .fold(T::zero(), |acc, x| acc + x.abs())
    }
}

impl<T> Index<(usize, usize)> for Mat3<T> {
    type Output = T;

    /// Zero-based `(row, column)` access.
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.rows[i][j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat3<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.rows[i][j]
    }
}

impl<T: Field> Add for Mat3<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.rows[i][j] = self.rows[i][j] + rhs.rows[i][j];
            }
        }
        out
    }
}

impl<T: Field> Sub for Mat3<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.rows[i][j] = self.rows[i][j] - rhs.rows[i][j];
            }
        }
        out
    }
}

impl<T: Field> Neg for Mat3<T> {
    type Output = Self;

    fn neg(self) -> Self {
        self.map(|x| -x)
    }
}

impl<T: Field> Mul for Mat3<T> {
    type Output = Self;

    /// Standard product; each entry sums `a_i1 b_1j + a_i2 b_2j + a_i3 b_3j`
    /// left to right.
    fn mul(self, rhs: Self) -> Self {
        let a = &self.rows;
        let b = &rhs.rows;
        let mut out = [[T::zero(); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
            }
        }
        Self::from_rows(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn d3() -> Mat3<f64> {
        Mat3::diag(1.0, 2.0, 3.0)
    }

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn identity_and_diagonal_products() {
        let a = Mat3::from_row_major([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 10.0]);
        assert_eq!(Mat3::identity() * a, a);
        assert_eq!(d3() * d3(), Mat3::diag(1.0, 4.0, 9.0));
    }

    #[test]
    fn product_with_inverse_is_identity() {
        let a = Mat3::from_row_major([4.0, -2.0, 1.0, 3.0, 6.0, -4.0, 2.0, 1.0, 8.0]);
        // exact inverse computed over the rationals
        let exact = a
            .map(|x| Rational::from_integer(x as i128))
            .inverse()
            .unwrap();
        let inv = exact.map(|r| *r.numer() as f64 / *r.denom() as f64);
        let p = a * inv;
        assert!((p - Mat3::identity()).max_abs() < 1e-14);
        assert_eq!(
            a.map(|x| Rational::from_integer(x as i128)) * exact,
            Mat3::identity()
        );
    }

    #[test]
    fn powers() {
        let a = Mat3::from_row_major([1.0, 2.0, 0.0, -1.0, 3.0, 2.0, 0.5, 0.0, 1.0]);
        assert_eq!(a.pow(0), Mat3::identity());
        assert_eq!(a.pow(1), a);
        assert_eq!(d3().pow(2), Mat3::diag(1.0, 4.0, 9.0));
        let n = Mat3::from_row_major([0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(n.pow(2), Mat3::zero());
        assert_eq!(a.pow(4), a * a.pow(3));
        assert!(a.try_pow(5).is_err());
    }

    #[test]
    #[should_panic]
    fn power_beyond_four_panics() {
        let _ = d3().pow(5);
    }

    #[test]
    fn trace_and_determinant() {
        assert_eq!(Mat3::<f64>::identity().trace(), 3.0);
        assert_eq!(d3().trace(), 6.0);
        assert_eq!(Mat3::<f64>::identity().det(), 1.0);
        assert_eq!(d3().det(), 6.0);
        let s = Mat3::from_row_major([1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(s.det(), 0.0);
    }

    #[test]
    fn inverse_cases() {
        assert_eq!(Mat3::<f64>::identity().inverse().unwrap(), Mat3::identity());
        let s = Mat3::from_row_major([1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(s.inverse(), Err(Error::Singular));

        // similarity transform of the well-conditioned benchmark family
        let u = Mat3::from_row_major([1, -1, 1, 1, 1, 1, -1, -1, 1].map(Rational::from_i32));
        assert_eq!(u.det(), Rational::from_i32(4));
        let expected = Mat3::from_row_major([
            q(1, 2),
            q(0, 1),
            q(-1, 2),
            q(-1, 2),
            q(1, 2),
            q(0, 1),
            q(0, 1),
            q(1, 2),
            q(1, 2),
        ]);
        assert_eq!(u.inverse().unwrap(), expected);
        // entries are integer multiples of 1/4
        for x in expected.to_row_major() {
            assert!((x * Rational::from_i32(4)).is_integer());
        }
        // the f64 route reproduces the exact result
        let uf = u.map(|r| *r.numer() as f64 / *r.denom() as f64);
        let invf = uf.inverse().unwrap();
        assert_eq!(
            invf,
            expected.map(|r| *r.numer() as f64 / *r.denom() as f64)
        );
    }

    #[test]
    fn max_abs_cases() {
        assert_eq!(Mat3::<f64>::identity().max_abs(), 1.0);
        assert_eq!(Mat3::<f64>::zero().max_abs(), 0.0);
        assert_eq!(Mat3::diag(-5.0, 1.0, 2.0).max_abs(), 5.0);
    }

    #[test]
    fn one_based_entry_access() {
        let a = Mat3::from_row_major([1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(a.entry(1, 1), 1);
        assert_eq!(a.entry(2, 3), 6);
        assert_eq!(a.entry(3, 1), 7);
        assert_eq!(a[(2, 0)], 7);
    }

    fn arb_mat() -> impl Strategy<Value = Mat3<f64>> {
        prop::array::uniform9(-10.0..10.0f64).prop_map(Mat3::from_row_major)
    }

    proptest! {
        #[test]
        fn trace_of_product_commutes(a in arb_mat(), b in arb_mat()) {
            let lhs = (a * b).trace();
            let rhs = (b * a).trace();
            let tol = 8.0 * f64::EPSILON * a.max_abs() * b.max_abs() * 9.0;
            prop_assert!((lhs - rhs).abs() <= tol);
        }

        #[test]
        fn max_abs_zero_only_for_zero(a in arb_mat()) {
            prop_assert!(a.max_abs() >= 0.0);
            prop_assert_eq!(a.max_abs() == 0.0, a == Mat3::zero());
        }

        #[test]
        fn integer_powers_square_exactly(e in prop::array::uniform9(-3i32..=3)) {
            // small integers keep every product exact, so association cannot matter
            let a = Mat3::from_row_major(e.map(|x| x as f64));
            let a2 = a.pow(2);
            prop_assert_eq!(a.pow(4), a2 * a2);
        }
    }
}

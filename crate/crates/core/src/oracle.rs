//! Reference values for error measurement.
//!
//! Benchmark matrices `B = U Λ U⁻¹` are formed in double-double and rounded
//! to `f64`. The ground truth is then recomputed from the rounded matrix, so
//! measured errors contain only the rounding of the algorithm under test.
//! Invariants are evaluated exactly over big rationals and rounded to
//! double-double; eigenvalues and projectors follow in double-double.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use crate::dd::DoubleDouble;
use crate::eig3::{angle, eigenvalues3, AngleMethod};
use crate::error::{Error, Result};
use crate::invariants::PrincipalInvariants;
use crate::mat3::Mat3;
use crate::projectors::projectors_frobenius_with;
use crate::scalar::{Field, Rational, Scalar};

type Dd = DoubleDouble;

/// Eigenvalue families in which one of Δ, Δp, Δq vanishes as δ → 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CriticalCase {
    /// Λ = diag(−1, 1, 1 + δ).
    DeltaToZero,
    /// Λ = diag(1, 1, 1 + δ).
    DeltaPToZero,
    /// Λ = diag(0, 1, 2 + δ).
    DeltaQToZero,
}

impl CriticalCase {
    pub const ALL: [CriticalCase; 3] = [
        CriticalCase::DeltaToZero,
        CriticalCase::DeltaPToZero,
        CriticalCase::DeltaQToZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CriticalCase::DeltaToZero => "delta",
            CriticalCase::DeltaPToZero => "deltap",
            CriticalCase::DeltaQToZero => "deltaq",
        }
    }

    /// Diagonal of Λ(δ), exact in double-double.
    pub fn lambda(self, delta: f64) -> [Dd; 3] {
        let (a, b, c) = match self {
            CriticalCase::DeltaToZero => (-1.0, 1.0, 1.0),
            CriticalCase::DeltaPToZero => (1.0, 1.0, 1.0),
            CriticalCase::DeltaQToZero => (0.0, 1.0, 2.0),
        };
        [Dd::from(a), Dd::from(b), Dd::sum(c, delta)]
    }
}

impl std::str::FromStr for CriticalCase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "delta" => Ok(Self::DeltaToZero),
            "deltap" => Ok(Self::DeltaPToZero),
            "deltaq" => Ok(Self::DeltaQToZero),
            other => Err(format!(
                "unknown case `{other}` (expected delta, deltap or deltaq)"
            )),
        }
    }
}

/// Similarity transformation applied to Λ.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub enum TransformCase {
    /// `[[1, −1, 1], [1, 1, 1], [−1, −1, 1]]`, det = 4.
    CaseI,
    /// `[[1, 1, 1], [1, 0, 1], [2, 1, 2 + γ]]`, det = −γ.
    CaseII { gamma: f64 },
}

impl TransformCase {
    pub fn name(self) -> &'static str {
        match self {
            TransformCase::CaseI => "case1",
            TransformCase::CaseII { .. } => "case2",
        }
    }

    pub fn gamma(self) -> Option<f64> {
        match self {
            TransformCase::CaseI => None,
            TransformCase::CaseII { gamma } => Some(gamma),
        }
    }

    pub fn u(self) -> Result<Mat3<Dd>> {
        let m = |r: [[f64; 3]; 3]| Mat3::from_rows(r).map(Dd::from);
        match self {
            TransformCase::CaseI => Ok(m([[1.0, -1.0, 1.0], [1.0, 1.0, 1.0], [-1.0, -1.0, 1.0]])),
            TransformCase::CaseII { gamma } => {
                if !(gamma > 0.0 && gamma.is_finite()) {
                    return Err(Error::InvalidGamma(gamma));
                }
                let mut u = m([[1.0, 1.0, 1.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]]);
                u[(2, 2)] = Dd::sum(2.0, gamma);
                Ok(u)
            }
        }
    }
}

/// `‖U‖∞ ‖U⁻¹‖∞`.
pub fn condition_number<T: Scalar>(u: &Mat3<T>) -> Result<f64> {
    let norm = |m: &Mat3<T>| {
        m.rows()
            .iter()
            .map(|r| r.iter().fold(T::zero(), |acc, x| acc + x.abs()).to_f64())
            .fold(0.0, f64::max)
    };
    Ok(norm(u) * norm(&u.inverse()?))
}

/// Reference values recomputed from a working-precision matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundTruth {
    pub matrix: Mat3<f64>,
    pub invariants: PrincipalInvariants<Dd>,
    pub delta_p: Dd,
    pub delta_q: Dd,
    pub delta: Dd,
    /// Ascending.
    pub lambda: [Dd; 3],
}

impl GroundTruth {
    /// Frobenius covariants of `matrix` in double-double, or `None` when two
    /// reference eigenvalues coincide.
    pub fn projectors(&self) -> Option<[Mat3<Dd>; 3]> {
        let a = self.matrix.map(Dd::from);
        let p = projectors_frobenius_with(&a, self.lambda, 0.0).ok()?;
        Some([0, 1, 2].map(|k| p.terms[k].projector))
    }

    /// Eigenvalue-based Δ, Δp, Δq:
    /// `Π(λi−λj)²`, `½Σ(λi−λj)²`, `Π(3λk − I1)`.
    pub fn from_eigenvalues(&self) -> (Dd, Dd, Dd) {
        let [a, b, c] = self.lambda;
        let (ab, ac, bc) = (a - b, a - c, b - c);
        let v = ab * ac * bc;
        let two = Dd::from(2.0);
        let three = Dd::from(3.0);
        let i1 = a + b + c;
        (
            v * v,
            (ab * ab + ac * ac + bc * bc) / two,
            (three * a - i1) * (three * b - i1) * (three * c - i1),
        )
    }
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite matrix entry")
}

/// Nearest double-double to an exact rational.
pub fn rational_to_dd(x: &BigRational) -> Dd {
    let hi = x.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return Dd::from(hi);
    }
    let rest = x - exact(hi);
    Dd::new(hi, rest.to_f64().unwrap_or(0.0))
}

/// Exact `(I1, I2, I3, Δp, Δq, Δ)` of a working-precision matrix.
fn exact_invariants(b: &Mat3<f64>) -> [BigRational; 6] {
    let a: Vec<Vec<BigRational>> = b
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| exact(x)).collect())
        .collect();
    let i1 = &a[0][0] + &a[1][1] + &a[2][2];
    let i2 = &a[0][0] * &a[1][1] + &a[0][0] * &a[2][2] + &a[1][1] * &a[2][2]
        - &a[0][1] * &a[1][0]
        - &a[0][2] * &a[2][0]
        - &a[1][2] * &a[2][1];
    let i3 = &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1])
        - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
        + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0]);
    let n = |k: i64| BigRational::from_integer(BigInt::from(k));
    let dp = &i1 * &i1 - n(3) * &i2;
    let dq = n(2) * &i1 * &i1 * &i1 - n(9) * &i1 * &i2 + n(27) * &i3;
    let delta = (n(4) * &dp * &dp * &dp - &dq * &dq) / n(27);
    [i1, i2, i3, dp, dq, delta]
}

/// Relative level below which a negative reference Δ or Δp counts as zero.
pub const ORACLE_CLAMP: f64 = 8.271_806_125_530_277e-25; // 2^-80

/// Ground truth for a working-precision matrix.
pub fn reference_invariants(b: &Mat3<f64>) -> Result<GroundTruth> {
    let [i1, i2, i3, dp, dq, delta] = exact_invariants(b).map(|x| rational_to_dd(&x));
    let scale = b.max_abs();
    let clamp = |name: &'static str, v: Dd, deg: i32| {
        if v >= Dd::ZERO {
            return Ok(v);
        }
        let threshold = -ORACLE_CLAMP * scale.powi(deg);
        if v.to_f64() >= threshold {
            Ok(Dd::ZERO)
        } else {
            Err(Error::NonRealSpectrum {
                quantity: name,
                value: v.to_f64(),
                threshold,
            })
        }
    };
    let delta_c = clamp("delta", delta, 6)?;
    let dp_c = clamp("delta_p", dp, 2)?;
    let phi = angle(delta_c, dq, AngleMethod::Arctan)?;
    let lambda = eigenvalues3(i1, dp_c, phi);
    Ok(GroundTruth {
        matrix: *b,
        invariants: PrincipalInvariants { i1, i2, i3 },
        delta_p: dp,
        delta_q: dq,
        delta,
        lambda,
    })
}

/// `U Λ(δ) U⁻¹` formed in double-double and rounded entrywise.
pub fn benchmark_matrix(
    case: CriticalCase,
    transform: TransformCase,
    delta: f64,
) -> Result<Mat3<f64>> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::InvalidDelta(delta));
    }
    let u = transform.u()?;
    let uinv = u.inverse()?;
    let [a, b, c] = case.lambda(delta);
    Ok((u * Mat3::diag(a, b, c) * uinv).map(|x| x.to_f64()))
}

/// Benchmark matrix with its ground truth.
pub fn make_test_matrix(
    case: CriticalCase,
    transform: TransformCase,
    delta: f64,
) -> Result<(Mat3<f64>, GroundTruth)> {
    let b = benchmark_matrix(case, transform, delta)?;
    let truth = reference_invariants(&b)?;
    Ok((b, truth))
}

/// Logarithmic grid of `floor(ppd·log10(stop/start)) + 1` points from
/// `start`, with exact decimal values at whole decades.
pub fn delta_grid(start: f64, stop: f64, points_per_decade: u32) -> Vec<f64> {
    assert!(start > 0.0 && stop >= start && points_per_decade > 0);
    let ppd = points_per_decade as i64;
    let count = (ppd as f64 * (stop / start).log10() + 1e-9).floor() as i64 + 1;
    let text = format!("{start:e}");
    let (mantissa, exp) = text.split_once('e').expect("exponent form");
    let exp: i64 = exp.parse().expect("integer exponent");
    (0..count)
        .map(|i| {
            let decade: f64 = format!("{mantissa}e{}", exp + i.div_euclid(ppd))
                .parse()
                .expect("decimal literal");
            let r = i.rem_euclid(ppd);
            if r == 0 {
                decade
            } else {
                decade * 10f64.powf(r as f64 / ppd as f64)
            }
        })
        .collect()
}

/// A matrix with exactly known spectrum and projectors, rounded to `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomCase {
    pub matrix: Mat3<f64>,
    /// Ascending.
    pub lambda: [f64; 3],
    pub projectors: [Mat3<f64>; 3],
}

/// Random U with entries `k/4` in [−2, 2] and |det U| > 0.1.
pub fn random_transform(rng: &mut impl Rng) -> Mat3<Rational> {
    loop {
        let u = Mat3::from_row_major(std::array::from_fn(|_| {
            Rational::new(rng.random_range(-8..=8), 4)
        }));
        if u.det().abs() > Rational::new(1, 10) {
            return u;
        }
    }
}

/// Ascending eigenvalues on a 10⁻³ lattice, the smallest in [−3, 3], with
/// both gaps at least `min_gap` and at most 2.
pub fn random_spectrum(rng: &mut impl Rng, min_gap: f64) -> [Rational; 3] {
    let lo = ((min_gap * 1000.0).ceil() as i128).max(1);
    let a = rng.random_range(-3000..=3000);
    let b = a + rng.random_range(lo..=2000.max(lo));
    let c = b + rng.random_range(lo..=2000.max(lo));
    [a, b, c].map(|x| Rational::new(x, 1000))
}

pub fn random_case(rng: &mut impl Rng, min_gap: f64) -> RandomCase {
    let u = random_transform(rng);
    let l = random_spectrum(rng, min_gap);
    let uinv = u.inverse().expect("non-singular by construction");
    let to_f64 = |m: Mat3<Rational>| m.map(|x| x.to_f64().expect("small rational"));
    let diag = |k: usize| {
        let mut d = Mat3::zero();
        d[(k, k)] = Rational::from_i32(1);
        d
    };
    RandomCase {
        matrix: to_f64(u * Mat3::diag(l[0], l[1], l[2]) * uinv),
        lambda: l.map(|x| x.to_f64().expect("small rational")),
        projectors: [0, 1, 2].map(|k| to_f64(u * diag(k) * uinv)),
    }
}

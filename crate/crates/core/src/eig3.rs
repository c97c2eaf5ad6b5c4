//! Eigenvalues of a 3×3 matrix with real spectrum via the trigonometric
//! closed form `λ_k = ⅓[I1 + 2√Δp cos(φ + 2πk/3)]`, k = 1, 2, 3.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{derived_invariants, DerivedInvariants, InvariantRoute};
use crate::mat3::{Mat3, Vec3};
use crate::scalar::Scalar;

/// How the angle φ is obtained from Δ and Δq.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleMethod {
    Arccos,
    #[default]
    Arctan,
    /// Expansion around Δ = 0 through the Δ^(5/2) term.
    Series,
}

impl AngleMethod {
    pub fn name(self) -> &'static str {
        match self {
            AngleMethod::Arccos => "arccos",
            AngleMethod::Arctan => "arctan",
            AngleMethod::Series => "series",
        }
    }
}

impl std::str::FromStr for AngleMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "arccos" => Ok(Self::Arccos),
            "arctan" => Ok(Self::Arctan),
            "series" => Ok(Self::Series),
            other => Err(format!(
                "unknown angle method `{other}` (expected arccos, arctan or series)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Multiplicity {
    Distinct,
    /// λ1 = λ2 < λ3.
    DoubleLow,
    /// λ1 < λ2 = λ3.
    DoubleHigh,
    Triple,
}

impl Multiplicity {
    /// Number of distinct eigenvalues.
    pub fn distinct_count(self) -> usize {
        match self {
            Multiplicity::Distinct => 3,
            Multiplicity::DoubleLow | Multiplicity::DoubleHigh => 2,
            Multiplicity::Triple => 1,
        }
    }
}

/// Thresholds relative to powers of `max_abs(A)`.
///
/// `tau_*` decide the multiplicity classification, `clamp_*` how far below
/// zero a computed Δ or Δp may fall before the spectrum is declared complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub tau_p: f64,
    pub tau_delta: f64,
    pub clamp_p: f64,
    pub clamp_delta: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tau_p: 1e-24,
            tau_delta: 1e-24,
            clamp_p: 1e-24,
            clamp_delta: 1e-24,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Settings {
    pub route: InvariantRoute,
    pub angle: AngleMethod,
    pub tolerances: Tolerances,
}

impl Settings {
    pub fn new(route: InvariantRoute, angle: AngleMethod) -> Self {
        Self {
            route,
            angle,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenTriple<T> {
    /// Ascending.
    pub lambda: Vec3<T>,
    pub phi: T,
    pub multiplicity: Multiplicity,
    /// Δp, Δq, Δ as computed, before clamping.
    pub invariants: DerivedInvariants<T>,
}

/// The angle φ ∈ [0, π/3] from Δ ≥ 0 and Δq.
pub fn angle<T: Scalar>(delta: T, delta_q: T, method: AngleMethod) -> Result<T> {
    let c = T::from_i32;
    match method {
        AngleMethod::Arctan => Ok((c(27).sqrt() * delta.sqrt()).atan2(delta_q) / c(3)),
        AngleMethod::Arccos => {
            let den = (delta_q * delta_q + c(27) * delta).sqrt();
            if den == T::zero() {
                return Ok(T::zero());
            }
            let mut x = delta_q / den;
            if x > T::one() {
                x = T::one();
            } else if x < -T::one() {
                x = -T::one();
            }
            Ok(x.acos() / c(3))
        }
        AngleMethod::Series => {
            if delta_q == T::zero() || c(27) * delta > delta_q * delta_q {
                return Err(Error::SeriesOutOfRange);
            }
            let shift = if delta_q < T::zero() {
                T::pi()
            } else {
                T::zero()
            };
            let t = c(27).sqrt() * delta.sqrt() / delta_q;
            let t2 = t * t;
            let t3 = t2 * t;
            let t5 = t3 * t2;
            Ok((shift + t - t3 / c(3) + t5 / c(5)) / c(3))
        }
    }
}

/// `⅓[I1 + 2√Δp cos(φ + 2πk/3)]` for k = 1, 2, 3; ascending for φ ∈ [0, π/3].
pub fn eigenvalues3<T: Scalar>(i1: T, delta_p: T, phi: T) -> [T; 3] {
    let c = T::from_i32;
    let r = c(2) * delta_p.sqrt();
    [1, 2, 3].map(|k| (i1 + r * (phi + T::pi() * c(2 * k) / c(3)).cos()) / c(3))
}

/// Classifies the spectrum from already clamped Δ ≥ 0 and Δp ≥ 0.
pub fn classify_multiplicity(
    delta: f64,
    delta_p: f64,
    delta_q: f64,
    scale: f64,
    tol: &Tolerances,
) -> Multiplicity {
    if delta_p <= tol.tau_p * scale.powi(2) {
        Multiplicity::Triple
    } else if delta <= tol.tau_delta * scale.powi(6) {
        if delta_q > 0.0 {
            Multiplicity::DoubleLow
        } else {
            Multiplicity::DoubleHigh
        }
    } else {
        Multiplicity::Distinct
    }
}

/// Maps small negative values to zero; anything below `-tol·scale^deg` is
/// a genuine complex pair.
fn clamp_nonneg<T: Scalar>(
    quantity: &'static str,
    v: T,
    tol: f64,
    scale: f64,
    deg: i32,
) -> Result<T> {
    if v >= T::zero() {
        return Ok(v);
    }
    let threshold = -tol * scale.powi(deg);
    if v.to_f64() >= threshold {
        Ok(T::zero())
    } else {
        Err(Error::NonRealSpectrum {
            quantity,
            value: v.to_f64(),
            threshold,
        })
    }
}

/// Full eigenvalue pipeline for `a`.
pub fn eigenvalues<T: Scalar>(a: &Mat3<T>, settings: &Settings) -> Result<EigenTriple<T>> {
    let inv = derived_invariants(a, settings.route);
    let scale = a.max_abs().to_f64();
    let tol = &settings.tolerances;
    let delta = clamp_nonneg("delta", inv.delta, tol.clamp_delta, scale, 6)?;
    let dp = clamp_nonneg("delta_p", inv.delta_p, tol.clamp_p, scale, 2)?;
    let multiplicity = classify_multiplicity(
        delta.to_f64(),
        dp.to_f64(),
        inv.delta_q.to_f64(),
        scale,
        tol,
    );
    let phi = angle(delta, inv.delta_q, settings.angle)?;
    let [l1, l2, l3] = eigenvalues3(a.trace(), dp, phi);
    Ok(EigenTriple {
        lambda: Vec3::new(l1, l2, l3),
        phi,
        multiplicity,
        invariants: inv,
    })
}

//! Principal invariants, the cubic-resolvent invariants Δp and Δq, and the
//! discriminant Δ, each by the classical ("naive") coefficient formulas and
//! by cancellation-free sum-of-products forms. Also general
//! sub-discriminants `det B_kl` with `(B_kl)_ij = tr A^(k_i + l_j)`.

pub mod sop;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat3::{Mat3, MAX_POWER};
use crate::scalar::Field;

pub use sop::{SopTables, SOP_TABLES};

/// Coefficients of the characteristic polynomial
/// `λ³ − I1 λ² + I2 λ − I3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrincipalInvariants<T> {
    pub i1: T,
    pub i2: T,
    pub i3: T,
}

/// Which set of formulas produced a [`DerivedInvariants`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantRoute {
    Naive,
    #[default]
    Sop,
}

impl InvariantRoute {
    pub fn name(self) -> &'static str {
        match self {
            InvariantRoute::Naive => "naive",
            InvariantRoute::Sop => "sop",
        }
    }
}

impl std::str::FromStr for InvariantRoute {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "naive" => Ok(Self::Naive),
            "sop" => Ok(Self::Sop),
            other => Err(format!(
                "unknown invariant route `{other}` (expected naive or sop)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedInvariants<T> {
    pub delta_p: T,
    pub delta_q: T,
    pub delta: T,
    pub method: InvariantRoute,
}

/// A strictly increasing, non-empty list of matrix-power exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: &[u32]) -> Result<Self> {
        if exponents.is_empty() || exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMultiIndex);
        }
        Ok(Self(exponents.to_vec()))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn principal_invariants<T: Field>(a: &Mat3<T>) -> PrincipalInvariants<T> {
    let i1 = a.trace();
    let tr2 = (*a * *a).trace();
    let i2 = (i1 * i1 - tr2) / T::from_i32(2);
    let i3 = a.det();
    PrincipalInvariants { i1, i2, i3 }
}

/// `Δp = I1² − 3 I2` and `Δq = 2 I1³ − 9 I1 I2 + 27 I3`.
pub fn delta_pq_naive<T: Field>(inv: &PrincipalInvariants<T>) -> (T, T) {
    let PrincipalInvariants { i1, i2, i3 } = *inv;
    let c = T::from_i32;
    let dp = i1 * i1 - c(3) * i2;
    let dq = c(2) * i1 * i1 * i1 - c(9) * i1 * i2 + c(27) * i3;
    (dp, dq)
}

/// `18 I1 I2 I3 + I1² I2² − 4 I1³ I3 − 4 I2³ − 27 I3²`.
pub fn discriminant_naive<T: Field>(inv: &PrincipalInvariants<T>) -> T {
    let PrincipalInvariants { i1, i2, i3 } = *inv;
    let c = T::from_i32;
    c(18) * i1 * i2 * i3 + i1 * i1 * i2 * i2
        - c(4) * i1 * i1 * i1 * i3
        - c(4) * i2 * i2 * i2
        - c(27) * i3 * i3
}

/// `(4 Δp³ − Δq²) / 27`.
pub fn discriminant_dpdq<T: Field>(dp: T, dq: T) -> T {
    let c = T::from_i32;
    (c(4) * dp * dp * dp - dq * dq) / c(27)
}

/// The 14 discriminant factors `(x̄, ȳ)` for `a`.
pub fn sop_factors<T: Field>(a: &Mat3<T>, tables: &SopTables) -> ([T; 14], [T; 14]) {
    (
        tables.x.map(|p| sop::eval_poly(p, a)),
        tables.y.map(|p| sop::eval_poly(p, a)),
    )
}

/// Discriminant as the weighted sum of 14 products `x̄ᵀ D ȳ`.
pub fn discriminant_sop<T: Field>(a: &Mat3<T>) -> T {
    discriminant_sop_with(a, &SOP_TABLES)
}

pub fn discriminant_sop_with<T: Field>(a: &Mat3<T>, tables: &SopTables) -> T {
    let (x, y) = sop_factors(a, tables);
    sop::weighted_dot(&tables.d, &x, &y)
}

/// Δp as `½ x̄_pᵀ D_p ȳ_p`.
pub fn deltap_sop<T: Field>(a: &Mat3<T>) -> T {
    deltap_sop_with(a, &SOP_TABLES)
}

pub fn deltap_sop_with<T: Field>(a: &Mat3<T>, tables: &SopTables) -> T {
    let x = tables.xp.map(|p| sop::eval_poly(p, a));
    let y = tables.yp.map(|p| sop::eval_poly(p, a));
    sop::weighted_dot(&tables.dp, &x, &y) / T::from_i32(2)
}

/// `tr A^0 .. tr A^4`.
fn power_traces<T: Field>(a: &Mat3<T>) -> [T; 5] {
    let mut out = [T::zero(); 5];
    let mut p = Mat3::identity();
    for t in out.iter_mut() {
        *t = p.trace();
        p = *a * p;
    }
    out
}

/// Laplace expansion along the first row.
fn det_small<T: Field>(m: &[Vec<T>]) -> T {
    match m.len() {
        0 => T::one(),
        1 => m[0][0],
        n => {
            let mut acc = T::zero();
            for j in 0..n {
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let term = m[0][j] * det_small(&minor);
                acc = if j == 0 {
                    term
                } else if j % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                };
            }
            acc
        }
    }
}

/// `det B_kl` with `(B_kl)_ij = tr A^(k_i + l_j)`.
pub fn subdiscriminant<T: Field>(a: &Mat3<T>, k: &MultiIndex, l: &MultiIndex) -> Result<T> {
    if k.len() != l.len() {
        return Err(Error::MultiIndexLength {
            left: k.len(),
            right: l.len(),
        });
    }
    let max = k.0.last().unwrap() + l.0.last().unwrap();
    if max > MAX_POWER {
        return Err(Error::PowerOutOfRange(max));
    }
    let traces = power_traces(a);
    let b: Vec<Vec<T>> =
        k.0.iter()
            .map(|&ki| l.0.iter().map(|&lj| traces[(ki + lj) as usize]).collect())
            .collect();
    Ok(det_small(&b))
}

/// `Δq = 3 Δ_(0,1)(0,2) − 4 tr(A) Δp` with Δp from the sum-of-products form.
pub fn deltaq_subdisc<T: Field>(a: &Mat3<T>) -> T {
    deltaq_subdisc_with(a, &SOP_TABLES)
}

pub fn deltaq_subdisc_with<T: Field>(a: &Mat3<T>, tables: &SopTables) -> T {
    let t = power_traces(a);
    // det [[tr A^0, tr A^2], [tr A^1, tr A^3]]
    let d0102 = t[0] * t[3] - t[2] * t[1];
    let c = T::from_i32;
    c(3) * d0102 - c(4) * a.trace() * deltap_sop_with(a, tables)
}

/// Discriminant as the determinant of the trace-Gram matrix `B_ij = tr A^(i+j−2)`.
pub fn discriminant_gram<T: Field>(a: &Mat3<T>) -> T {
    let t = power_traces(a);
    Mat3::from_rows([[t[0], t[1], t[2]], [t[1], t[2], t[3]], [t[2], t[3], t[4]]]).det()
}

/// Δp, Δq and Δ by the chosen route.
pub fn derived_invariants<T: Field>(a: &Mat3<T>, route: InvariantRoute) -> DerivedInvariants<T> {
    match route {
        InvariantRoute::Naive => {
            let inv = principal_invariants(a);
            let (delta_p, delta_q) = delta_pq_naive(&inv);
            DerivedInvariants {
                delta_p,
                delta_q,
                delta: discriminant_naive(&inv),
                method: route,
            }
        }
        InvariantRoute::Sop => DerivedInvariants {
            delta_p: deltap_sop(a),
            delta_q: deltaq_subdisc(a),
            delta: discriminant_sop(a),
            method: route,
        },
    }
}

/// Binomial coefficient for the term-count identity.
pub const fn binomial(n: u64, k: u64) -> u64 {
    let mut acc = 1;
    let mut i = 0;
    while i < k {
        acc = acc * (n - i) / (i + 1);
        i += 1;
    }
    acc
}

/// Nonzero terms of the uncondensed Cauchy–Binet expansion for 3×3 input:
/// `C(9,3) − C(6,3)`.
pub const CAUCHY_BINET_TERMS: u64 = binomial(9, 3) - binomial(6, 3);

const _: () = assert!(CAUCHY_BINET_TERMS == 64);
const _: () = {
    let d = sop::D;
    let mut s = 0;
    let mut i = 0;
    while i < d.len() {
        s += d[i];
        i += 1;
    }
    assert!(s == 64);
};

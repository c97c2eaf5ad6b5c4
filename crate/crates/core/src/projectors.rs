//! Eigenprojectors `E_k` with `A = Σ λ_k E_k`.
//!
//! The primary route differentiates the eigenvalue pipeline with dual
//! numbers: `E_kᵀ = ∂λ_k/∂A`. Frobenius covariants (Lagrange interpolants
//! in A) are provided as an independent check.

use serde::Serialize;

use crate::dual::Dual;
use crate::eig3::{eigenvalues, EigenTriple, Multiplicity, Settings};
use crate::error::{Error, Result};
use crate::invariants::{delta_pq_naive, deltap_sop, principal_invariants, InvariantRoute};
use crate::mat3::Mat3;
use crate::scalar::{Field, Scalar};

/// One eigenvalue with the projector onto its (generalized) eigenspace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenprojector<T> {
    pub lambda: T,
    /// Algebraic multiplicity, equal to the rank of `projector`.
    pub multiplicity: usize,
    pub projector: Mat3<T>,
}

/// Eigenprojectors in ascending eigenvalue order. Repeated eigenvalues share
/// one merged projector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Projectors<T> {
    pub terms: Vec<Eigenprojector<T>>,
}

impl<T: Scalar> Projectors<T> {
    /// `Σ E_k`.
    pub fn sum(&self) -> Mat3<T> {
        self.terms
            .iter()
            .fold(Mat3::zero(), |acc, t| acc + t.projector)
    }

    /// `Σ f(λ_k) E_k`.
    pub fn apply(&self, f: impl Fn(T) -> T) -> Mat3<T> {
        self.terms
            .iter()
            .fold(Mat3::zero(), |acc, t| acc + t.projector.scale(f(t.lambda)))
    }

    /// `Σ λ_k E_k`.
    pub fn reconstruct(&self) -> Mat3<T> {
        self.apply(|l| l)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralDecomposition<T> {
    pub eigen: EigenTriple<T>,
    pub projectors: Projectors<T>,
}

fn lift<T: Scalar>(a: &Mat3<T>) -> Mat3<Dual<T>> {
    let e = a.to_row_major();
    Mat3::from_row_major(std::array::from_fn(|i| Dual::variable(e[i], i)))
}

/// `E` with `Eᵀ = ∂x/∂A`.
fn gradient_matrix<T: Scalar>(x: &Dual<T>) -> Result<Mat3<T>> {
    if !x.is_finite() {
        return Err(Error::DegenerateGradient);
    }
    Ok(Mat3::from_row_major(x.grad).transpose())
}

fn drop_grad<T: Scalar>(t: &EigenTriple<Dual<T>>) -> EigenTriple<T> {
    let v = |d: Dual<T>| d.value;
    EigenTriple {
        lambda: t.lambda.map(v),
        phi: t.phi.value,
        multiplicity: t.multiplicity,
        invariants: crate::invariants::DerivedInvariants {
            delta_p: t.invariants.delta_p.value,
            delta_q: t.invariants.delta_q.value,
            delta: t.invariants.delta.value,
            method: t.invariants.method,
        },
    }
}

/// Eigenvalues and eigenprojectors, the latter as eigenvalue gradients.
///
/// For a double eigenvalue the simple one is differentiated through the
/// reduced formula `λs = ⅓(I1 ± 2√Δp)`, and the cluster gets `I − Es`.
pub fn decompose<T: Scalar>(a: &Mat3<T>, settings: &Settings) -> Result<SpectralDecomposition<T>> {
    let ad = lift(a);
    let e = eigenvalues(&ad, settings)?;
    let eigen = drop_grad(&e);
    let l = eigen.lambda;
    let i = Mat3::identity();
    let terms = match e.multiplicity {
        Multiplicity::Distinct => (0..3)
            .map(|k| {
                Ok(Eigenprojector {
                    lambda: l[k],
                    multiplicity: 1,
                    projector: gradient_matrix(&e.lambda[k])?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        Multiplicity::DoubleLow | Multiplicity::DoubleHigh => {
            let low = e.multiplicity == Multiplicity::DoubleLow;
            let c = <Dual<T> as Field>::from_i32;
            let dp = match settings.route {
                InvariantRoute::Sop => deltap_sop(&ad),
                InvariantRoute::Naive => delta_pq_naive(&principal_invariants(&ad)).0,
            };
            let r = c(2) * dp.sqrt();
            let simple = (if low { ad.trace() + r } else { ad.trace() - r }) / c(3);
            let es = gradient_matrix(&simple)?;
            let two = T::from_i32(2);
            let (s, pair) = if low {
                (l[2], (l[0] + l[1]) / two)
            } else {
                (l[0], (l[1] + l[2]) / two)
            };
            let single = Eigenprojector {
                lambda: s,
                multiplicity: 1,
                projector: es,
            };
            let double = Eigenprojector {
                lambda: pair,
                multiplicity: 2,
                projector: i - es,
            };
            if low {
                vec![double, single]
            } else {
                vec![single, double]
            }
        }
        Multiplicity::Triple => vec![Eigenprojector {
            lambda: a.trace() / T::from_i32(3),
            multiplicity: 3,
            projector: i,
        }],
    };
    Ok(SpectralDecomposition {
        eigen,
        projectors: Projectors { terms },
    })
}

/// Eigenprojectors as eigenvalue gradients.
pub fn projectors_dual<T: Scalar>(a: &Mat3<T>, settings: &Settings) -> Result<Projectors<T>> {
    decompose(a, settings).map(|d| d.projectors)
}

/// Frobenius covariants `E_k = Π_{i≠k} (A − λ_i I)/(λ_k − λ_i)` with the
/// default gap floor of `16 ε max_abs(A)`.
pub fn projectors_frobenius<T: Scalar>(a: &Mat3<T>, lambda: [T; 3]) -> Result<Projectors<T>> {
    let floor = 16.0 * T::epsilon() * a.max_abs().to_f64();
    projectors_frobenius_with(a, lambda, floor)
}

/// As [`projectors_frobenius`] with an absolute gap floor.
pub fn projectors_frobenius_with<T: Scalar>(
    a: &Mat3<T>,
    lambda: [T; 3],
    floor: f64,
) -> Result<Projectors<T>> {
    let gap = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| (lambda[i] - lambda[j]).abs().to_f64())
        .fold(f64::INFINITY, f64::min);
    // also rejects NaN
    if gap.partial_cmp(&floor) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::DegenerateSpectrum { gap, floor });
    }
    let id = Mat3::identity();
    let shifted = lambda.map(|l| *a - id.scale(l));
    let terms = (0..3)
        .map(|k| {
            let (i, j) = match k {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let den = (lambda[k] - lambda[i]) * (lambda[k] - lambda[j]);
            Eigenprojector {
                lambda: lambda[k],
                multiplicity: 1,
                projector: (shifted[i] * shifted[j]).scale(T::one() / den),
            }
        })
        .collect();
    Ok(Projectors { terms })
}

/// `f(A) = Σ f(λ_k) E_k` over the dual-route projectors.
pub fn matrix_function<T: Scalar>(
    a: &Mat3<T>,
    f: impl Fn(T) -> T,
    settings: &Settings,
) -> Result<Mat3<T>> {
    Ok(projectors_dual(a, settings)?.apply(f))
}

//! Closed-form spectral decomposition of real 3×3 matrices with real
//! eigenvalues.
//!
//! Eigenvalues come from the trigonometric formula in the matrix invariants,
//! evaluated either with the classical formulas or with sum-of-products
//! forms that keep the discriminant accurate near repeated eigenvalues.
//! Eigenprojectors are eigenvalue gradients computed with dual numbers.
//!
//! ```
//! use spectral3::{decompose, Mat3f, Settings};
//!
//! let a = Mat3f::diag(1.0, 2.0, 3.0);
//! let d = decompose(&a, &Settings::default()).unwrap();
//! assert_eq!(d.projectors.terms.len(), 3);
//! assert!((d.eigen.lambda[2] - 3.0).abs() < 1e-14);
//! ```

pub mod bench;
pub mod dd;
pub mod dual;
pub mod eig3;
pub mod error;
pub mod invariants;
pub mod mat3;
pub mod oracle;
pub mod projectors;
pub mod scalar;
pub mod verify;

pub use dd::DoubleDouble;
pub use dual::Dual;
pub use eig3::{eigenvalues, AngleMethod, EigenTriple, Multiplicity, Settings, Tolerances};
pub use error::{Error, Result};
pub use invariants::{derived_invariants, principal_invariants, DerivedInvariants, InvariantRoute};
pub use mat3::{Mat3, Vec3};
pub use projectors::{decompose, matrix_function, Projectors, SpectralDecomposition};
pub use scalar::{Field, Rational, Scalar};

pub type Mat3f = Mat3<f64>;
pub type Mat3dd = Mat3<DoubleDouble>;
pub type Mat3q = Mat3<Rational>;
pub type Decomposition = SpectralDecomposition<f64>;

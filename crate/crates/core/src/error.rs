use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,

    /// The discriminant (or Δp) is negative beyond rounding level, so the
    /// spectrum contains a complex-conjugate pair.
    #[error("NonRealSpectrum: {quantity} = {value:e} is below the clamp threshold {threshold:e}")]
    NonRealSpectrum {
        quantity: &'static str,
        value: f64,
        threshold: f64,
    },

    #[error("DegenerateGradient: eigenvalue derivatives are not finite")]
    DegenerateGradient,

    #[error("DegenerateSpectrum: eigenvalue gap {gap:e} is below the floor {floor:e}")]
    DegenerateSpectrum { gap: f64, floor: f64 },

    #[error("series angle expansion is invalid when 27*delta > delta_q^2")]
    SeriesOutOfRange,

    #[error("multi-index lengths differ ({left} vs {right})")]
    MultiIndexLength { left: usize, right: usize },

    #[error("multi-index must be non-empty and strictly increasing")]
    InvalidMultiIndex,

    #[error("matrix power {0} is not supported (maximum is 4)")]
    PowerOutOfRange(u32),

    #[error("transform parameter gamma must be positive, got {0}")]
    InvalidGamma(f64),

    #[error("delta must be finite and non-negative, got {0}")]
    InvalidDelta(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

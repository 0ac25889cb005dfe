use thiserror::Error;

/// Errors surfaced by the validated-geometry primitives.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    /// Interval division where the denominator encloses zero.
    #[error("interval division by an interval containing zero: [{lo}, {hi}]")]
    DivisionByZero { lo: f64, hi: f64 },

    /// Square root of an interval that is entirely negative.
    #[error("interval sqrt of a negative interval: [{lo}, {hi}]")]
    SqrtNegative { lo: f64, hi: f64 },

    /// Endpoints out of order or non-finite where finiteness is required.
    #[error("malformed interval endpoints: [{lo}, {hi}]")]
    BadEndpoints { lo: f64, hi: f64 },

    /// Cone aperture must exceed 1 for the double cones used here.
    #[error("cone aperture must satisfy theta > 1, got {theta}")]
    BadAperture { theta: f64 },

    /// Logarithm of a non-positive extended-precision value.
    #[error("ln of a non-positive value")]
    LnNonPositive,
}

pub type Result<T> = std::result::Result<T, GeomError>;

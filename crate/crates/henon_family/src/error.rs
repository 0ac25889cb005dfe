use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    /// The conjugate form has no shear term; a nonzero eta is meaningless there.
    #[error("conjugate form requires eta = 0, got {eta}")]
    ConjugateWithShear { eta: f64 },

    #[error("xi = 1 makes the z-axis relation degenerate")]
    XiIsOne,

    #[error("no blender fixed point: {detail}")]
    NoBlenderFixedPoint { detail: String },

    #[error("coordinate change coefficient {name} must be nonzero")]
    ZeroCoefficient { name: &'static str },

    #[error(transparent)]
    Geom(#[from] geom_core::GeomError),
}

pub type Result<T> = std::result::Result<T, FamilyError>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CertError {
    #[error(transparent)]
    Family(#[from] henon_family::FamilyError),
    #[error(transparent)]
    Geom(#[from] geom_core::GeomError),
    #[error("curve rejected: {0}")]
    BadCurve(String),
    #[error("configuration rejected: {0}")]
    BadConfig(String),
}

pub type Result<T> = std::result::Result<T, CertError>;

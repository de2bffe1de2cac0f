use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("declared twist {declared} does not match form degree {actual}")]
    Homogeneity { declared: u32, actual: String },
    #[error("operation not supported over {0}")]
    UnsupportedRing(String),
    #[error("singular input: {0}")]
    SingularInput(String),
    #[error("norm {0} is not integral over the base ring")]
    IntegralityViolation(String),
    #[error("map is not linear over the algebra: {0}")]
    NotModuleLinear(String),
    #[error("specialization t = {0} hits a pole")]
    SpecializationPole(String),
    #[error("relative dimension {0} is not supported (maximum 3)")]
    UnsupportedDimension(usize),
    #[error("expected {expected} entries, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
    #[error("section {0} has a zero at infinity in every searched chart")]
    ZeroAtInfinity(String),
    #[error("section sequence is not certified regular: {0}")]
    NotCertified(String),
    #[error("chart obstruction: {0}")]
    ChartObstruction(String),
    #[error("invalid finite algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::Homogeneity { .. } => "HomogeneityError",
            Error::UnsupportedRing(_) => "UnsupportedRing",
            Error::SingularInput(_) => "SingularInput",
            Error::IntegralityViolation(_) => "IntegralityViolation",
            Error::NotModuleLinear(_) => "NotModuleLinear",
            Error::SpecializationPole(_) => "SpecializationPole",
            Error::UnsupportedDimension(_) => "UnsupportedDimension",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::ZeroAtInfinity(_) => "ZeroAtInfinity",
            Error::NotCertified(_) => "NotCertified",
            Error::ChartObstruction(_) => "ChartObstruction",
            Error::InvalidAlgebra(_) => "InvalidAlgebra",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The nominal top coefficient is too small for the degree to be `n`.
    #[error("degenerate leading coefficient: |alpha_{degree}| = {modulus:e} is below tolerance")]
    DegenerateLeading { degree: usize, modulus: f64 },

    #[error("evaluation point lies on pole {index} (distance {distance:e})")]
    PoleHit { index: usize, distance: f64 },

    #[error("pole {index} has modulus {modulus} <= 1")]
    PoleOnCircle { index: usize, modulus: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("every grid point is vacuous (numerator vanishes on the circle)")]
    AllSkipped,

    #[error("family {family} is not an extremal family of {theorem}")]
    FamilyMismatch { family: String, theorem: String },

    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed json: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

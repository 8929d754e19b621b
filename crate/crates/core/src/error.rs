use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain file schema violation: {0}")]
    Schema(String),

    #[error("invalid mesh at {location}: {message}")]
    Mesh { location: String, message: String },

    #[error("face {face}: unknown boundary tag `{tag}`")]
    UnknownBoundaryTag { face: usize, tag: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("could not bracket a root of sin(mu*theta) + mu*sin(theta) in (0, 1) for theta = {theta}")]
    Bracketing { theta: f64 },

    #[error("eigenvalue computation did not stabilise: {0}")]
    NonConvergence(String),

    #[error("spectral window up to Re = {re_hi} is too small to certify {what}")]
    WindowTooSmall { re_hi: f64, what: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("contradictory assumptions: {0}")]
    Contradiction(String),

    #[error("malformed query: {0}")]
    MalformedQuery(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn mesh(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Mesh { location: location.into(), message: message.into() }
    }
}

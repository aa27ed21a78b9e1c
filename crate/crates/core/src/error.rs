use thiserror::Error;

/// Errors produced by every layer of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Coxeter graph: {0}")]
    InvalidGraph(String),
    #[error("Coxeter graph is not spherical (root closure exceeded {0} roots)")]
    NonSpherical(usize),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("Weyl elements belong to different root systems")]
    MismatchedSystems,
    #[error("node set {0} is not stable under the required automorphism")]
    NotStable(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrix does not preserve the polar form")]
    NotFormPreserving,
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("unknown table family: {0}")]
    UnknownFamily(String),
    #[error("building property violated: {0}")]
    BuildingViolation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

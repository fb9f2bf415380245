use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported conductor {0} (supported: 1..=12)")]
    UnsupportedConductor(u32),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index {index} outside basis of size {size}")]
    ForeignIndex { index: usize, size: usize },
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("no matrix realization stored")]
    NoRealization,
    #[error("root decomposition failed: {0}")]
    RootDecomposition(String),
    #[error("not a base: {0}")]
    NotABase(String),
    #[error("diagram compatibility fails: {0}")]
    DiagramIncompatible(String),
    #[error("automorphism extension inconsistent: {0}")]
    ExtensionInconsistent(String),
    #[error("degree cap {cap} exceeded by word {word}")]
    CapExceeded { cap: usize, word: String },
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("not converged: {0}")]
    NotConverged(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

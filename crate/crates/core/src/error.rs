use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("rank deficiency: {0}")]
    RankDeficient(String),
    #[error("ill-defined homomorphism: {0}")]
    IllDefined(String),
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),
    #[error("invalid Cartan type {0}")]
    InvalidType(String),
    #[error("Weyl group exceeds the enumeration cap of {0}")]
    WeylCapExceeded(usize),
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("regime mismatch: {0}")]
    Regime(String),
    #[error("not in lattice: {0}")]
    NotInLattice(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Verification failures indicate bugs, every other variant bad input.
    pub fn is_verification(&self) -> bool {
        matches!(self, Error::Verification(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("not a face of the recession cone: {0}")]
    NotAFace(String),
    #[error("ideal is not prime: {0}")]
    NotPrime(String),
    #[error("monoid or scheme is not normal: {0}")]
    NotNormal(String),
    #[error("monoid or scheme is not cancellative: {0}")]
    NotCancellative(String),
    #[error("monoid is not sharp modulo units: {0}")]
    NotSharp(String),
    #[error("ideals live in different monoids")]
    ParentMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration budget exhausted: {0}")]
    Budget(String),
    #[error("seminormal membership window not certified for {0}")]
    SeminormalWindow(String),
    #[error("primary decomposition incomplete after degree bound {bound}: {partial} component(s) certified")]
    Decomposition { bound: i64, partial: usize },
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("invalid scheme data: {0}")]
    InvalidScheme(String),
    #[error("incompatible gluing data: {0}")]
    Gluing(String),
    #[error("internal consistency check failed: {0}")]
    Verification(String),
}

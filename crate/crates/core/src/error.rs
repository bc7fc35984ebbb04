use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NonPrimeBase: {0} is not prime")]
    NonPrimeBase(i64),
    #[error("BadModulus: modulus {0} must be at least 2")]
    BadModulus(i64),
    #[error("BadExponent: truncation exponent {0} must be at least 1")]
    BadExponent(i64),
    #[error("RingTooLarge: {0}")]
    RingTooLarge(String),
    #[error("RingMismatch: {0}")]
    RingMismatch(String),
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("NotWellDefined: {0}")]
    NotWellDefined(String),
    #[error("NotAComplex at degree {0}")]
    NotAComplex(i64),
    #[error("DegreeGap: {0}")]
    DegreeGap(String),
    #[error("NotAChainMap at degree {0}")]
    NotAChainMap(i64),
    #[error("EndpointMismatch: {0}")]
    EndpointMismatch(String),
    #[error("InfiniteRing: {0} requires a finite ring")]
    InfiniteRing(&'static str),
    #[error("UnsupportedRing: {0}")]
    UnsupportedRing(String),
    #[error("NoCompleteResolution: {0}")]
    NoCompleteResolution(String),
    #[error("LiftNotFound: {0}")]
    LiftNotFound(String),
    #[error("UnknownSuite: {0}")]
    UnknownSuite(String),
}

impl Error {
    /// Variant name, used by front ends that render errors by kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPrimeBase(_) => "NonPrimeBase",
            Error::BadModulus(_) => "BadModulus",
            Error::BadExponent(_) => "BadExponent",
            Error::RingTooLarge(_) => "RingTooLarge",
            Error::RingMismatch(_) => "RingMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotWellDefined(_) => "NotWellDefined",
            Error::NotAComplex(_) => "NotAComplex",
            Error::DegreeGap(_) => "DegreeGap",
            Error::NotAChainMap(_) => "NotAChainMap",
            Error::EndpointMismatch(_) => "EndpointMismatch",
            Error::InfiniteRing(_) => "InfiniteRing",
            Error::UnsupportedRing(_) => "UnsupportedRing",
            Error::NoCompleteResolution(_) => "NoCompleteResolution",
            Error::LiftNotFound(_) => "LiftNotFound",
            Error::UnknownSuite(_) => "UnknownSuite",
        }
    }

    /// Whether the error is a validation failure of user input rather than
    /// a computational obstruction.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NonPrimeBase(_)
                | Error::BadModulus(_)
                | Error::BadExponent(_)
                | Error::RingTooLarge(_)
                | Error::RingMismatch(_)
                | Error::ShapeMismatch(_)
                | Error::NotWellDefined(_)
                | Error::NotAComplex(_)
                | Error::DegreeGap(_)
                | Error::NotAChainMap(_)
                | Error::EndpointMismatch(_)
                | Error::UnknownSuite(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("closure has {0} components, expected a knot")]
    NotAKnot(usize),

    #[error("torus parameters ({0}, {1}) are not coprime")]
    NotCoprime(u64, u64),

    #[error("({0}, {1}, {2}) are not pairwise coprime")]
    NotPairwiseCoprime(u64, u64, u64),

    #[error("cover degree {0} is not a prime power")]
    NotPrimePower(u64),

    #[error("this invariant is defined for knots in the 3-sphere (casson base must be 0)")]
    BaseNotS3,

    #[error("Froyshov invariant h is required but was not supplied")]
    MissingFroyshov,

    #[error("knot determinant is {0}, expected 1")]
    DetNotOne(String),

    #[error("the {0}-fold branched cover is not a rational homology sphere")]
    NotRationalHomologySphere(u64),

    #[error("Alexander polynomial vanishes at exp(2*pi*i*{m}/{n}); signature is degenerate there")]
    DegenerateAtRoot { m: u64, n: u64 },

    #[error("diagram has {crossings} crossings, above the configured cap {cap}")]
    DiagramTooLarge { crossings: usize, cap: usize },

    #[error("matrix is not Hermitian under the chosen embedding")]
    NotHermitian,

    #[error("resultant of a zero polynomial")]
    ZeroPolynomial,

    #[error("pivot classification failed after maximal precision escalation")]
    PrecisionExhausted,

    #[error("this operation needs a braid presentation, got a planar diagram")]
    BraidRequired,
}

impl Error {
    /// Stable machine-readable code, used in batch error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::Validation(_) => "ValidationError",
            Error::NotAKnot(_) => "NotAKnot",
            Error::NotCoprime(..) => "NotCoprime",
            Error::NotPairwiseCoprime(..) => "NotPairwiseCoprime",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::BaseNotS3 => "BaseNotS3",
            Error::MissingFroyshov => "MissingFroyshov",
            Error::DetNotOne(_) => "DetNotOne",
            Error::NotRationalHomologySphere(_) => "NotRationalHomologySphere",
            Error::DegenerateAtRoot { .. } => "DegenerateAtRoot",
            Error::DiagramTooLarge { .. } => "DiagramTooLarge",
            Error::NotHermitian => "NotHermitian",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::PrecisionExhausted => "PrecisionExhausted",
            Error::BraidRequired => "BraidRequired",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

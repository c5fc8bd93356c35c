use thiserror::Error;

use crate::newton::NewtonDiagram;

/// Errors raised by the algebra, branch, and invariant computations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("negative exponent at byte {position}")]
    NegativeExponent { position: usize },
    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("linear substitution matrix is singular")]
    SingularMatrix,
    #[error("polynomial does not vanish at the origin")]
    NotVanishingAtOrigin,
    #[error("truncation cap {cap} reached before the result could be certified")]
    PrecisionExhausted { cap: usize },
    #[error("independent regularizations disagree after {attempts} attempts")]
    Disagreement { attempts: usize },
    #[error("generic-parameter computation degenerated: {0}")]
    NonGenericFailure(String),
    #[error("({n},{m}) is not a coprime pair of positive integers")]
    NotCoprime { n: u32, m: u32 },
    #[error("map germ is not finite: f and g share a component through the origin or do not vanish there")]
    NotFinite,
    #[error("jacobian determinant vanishes identically")]
    DegenerateJacobian,
    #[error("branch certificate mismatch: {0}")]
    CertificateMismatch(String),
    #[error("support oracle is inconsistent: {0}")]
    InconsistentOracle(String),
    #[error("support route needs reduced f and g; {0} has a multiple component")]
    NonReducedInput(&'static str),
    #[error("routes disagree: branches {branches}, support {support}")]
    RouteMismatch {
        branches: Box<NewtonDiagram>,
        support: Box<NewtonDiagram>,
    },
    #[error("f and g share a common component")]
    CommonComponent,
    #[error("branches belong to different expansions")]
    ForeignBranches,
    #[error("no consensus among sampled pencil members: {0}")]
    NoConsensus(String),
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Variant name, as used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "Syntax",
            Error::NegativeExponent { .. } => "NegativeExponent",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::SingularMatrix => "SingularMatrix",
            Error::NotVanishingAtOrigin => "NotVanishingAtOrigin",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::Disagreement { .. } => "Disagreement",
            Error::NonGenericFailure(_) => "NonGenericFailure",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::NotFinite => "NotFinite",
            Error::DegenerateJacobian => "DegenerateJacobian",
            Error::CertificateMismatch(_) => "CertificateMismatch",
            Error::InconsistentOracle(_) => "InconsistentOracle",
            Error::NonReducedInput(_) => "NonReducedInput",
            Error::RouteMismatch { .. } => "RouteMismatch",
            Error::CommonComponent => "CommonComponent",
            Error::ForeignBranches => "ForeignBranches",
            Error::NoConsensus(_) => "NoConsensus",
            Error::Corpus { .. } => "Corpus",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

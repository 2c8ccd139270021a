use thiserror::Error;

/// Errors raised by the shift, potential, pressure, measure and verification layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("volume too large for brute force: {size} exceeds the enumeration cap {cap}")]
    VolumeTooLarge { size: f64, cap: u64 },

    #[error("presentation not irreducible: no finite gap")]
    Reducible,

    #[error("aperiodicity undefined on reducible graph")]
    AperiodicityUndefined,

    #[error("exact-length gap does not exist: graph has period {period}")]
    ExactGapMissing { period: usize },

    #[error("periodic transfer system: Perron data not computed (period {period})")]
    PeriodicTransfer { period: usize },

    #[error("reducible transfer system: Perron data not computed")]
    ReducibleTransfer,

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("presentation is not right-resolving: determinize or supply right-resolving presentation")]
    NotRightResolving,

    #[error("foreign point: {0}")]
    ForeignPoint(String),

    #[error("insufficient context: block code of radius {radius} needs at least {needed} symbols, got {got}")]
    InsufficientContext {
        radius: usize,
        needed: usize,
        got: usize,
    },

    #[error("disallowed word: {0}")]
    DisallowedWord(String),

    #[error("regions not disjoint")]
    NotDisjoint,

    #[error("windows inconsistent: {0}")]
    WindowsInconsistent(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

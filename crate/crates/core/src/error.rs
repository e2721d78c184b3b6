//! Error type for algebra operations whose preconditions can fail at runtime.

use thiserror::Error;

/// Failures surfaced by module algebra, decomposition and envelope routines.
///
/// Parse errors have their own type ([`crate::parse::ParseError`]); everything
/// here is a semantic failure on structurally well-formed input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("colon by the zero polynomial is undefined")]
    ZeroColonDivisor,

    #[error("saturation by the zero ideal is undefined")]
    ZeroSaturationIdeal,

    #[error("{0} is not monomial")]
    NonMonomial(String),

    #[error("submodule equals the full module; no proper decomposition exists")]
    ImproperSubmodule,

    #[error("decomposition rejected:\n{0}")]
    InvalidDecomposition(String),

    #[error("decomposition has {found} components; envelope supports at most {max}")]
    TooManyComponents { found: usize, max: usize },

    #[error("{0}")]
    Precondition(String),

    #[error("no stored decomposition matches this submodule; reduced basis:\n{canonical}")]
    OracleMiss { canonical: String },

    #[error("no fixed point within {0} iterations")]
    IterationLimit(usize),

    #[error("no separator found for component {component}")]
    SeparatorNotFound { component: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

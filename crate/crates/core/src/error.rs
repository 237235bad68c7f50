use thiserror::Error;

use crate::algebra::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected rank {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("inconsistent linear system")]
    InconsistentSystem,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("not a regular sequence: {0}")]
    NotRegular(String),
    #[error("multiplicity is not an integer: {0}/{1}")]
    NonIntegerMultiplicity(usize, usize),
    #[error("no separating linear form found after {0} attempts")]
    SeparatingFormNotFound(usize),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("Noether basis has {found} of {expected} operators after order {order}")]
    NoetherIncomplete { order: u32, found: usize, expected: usize },
    #[error("Noether basis input is inconsistent: {0}")]
    NoetherInput(String),
    #[error("pole order of P'•σ_F exceeds one along f_{0}")]
    PoleOrder(usize),
    #[error("no polynomial completes the main part: class {0}")]
    CompletionFailed(String),
    #[error("annihilator order cap {cap} reached with {free} undetermined coefficients")]
    AnnihilatorCap { cap: u32, free: usize },
    #[error("leading coefficient is not unique: {0} free coefficients")]
    Underdetermined(usize),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Pipeline stage the error originates from.
    pub fn module(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } | Error::EmptyInput | Error::InconsistentSystem => "core-algebra",
            Error::Parse(_) => "parse",
            Error::NotZeroDimensional
            | Error::NonIntegerMultiplicity(..)
            | Error::SeparatingFormNotFound(_)
            | Error::InvalidDecomposition(_) => "zerodim",
            Error::NoetherIncomplete { .. } | Error::NoetherInput(_) => "noether",
            Error::PoleOrder(_) | Error::CompletionFailed(_) => "annihilator",
            Error::NotRegular(_)
            | Error::AnnihilatorCap { .. }
            | Error::Underdetermined(_)
            | Error::Certificate(_)
            | Error::ThreadPool(_) => "residue",
        }
    }
}

//! Symbolic dynamics for tent maps: itineraries and kneading sequences
//! over exact dyadic arithmetic, admissibility checking under the
//! parity-lexicographic order, pseudo-orbit and shadowing machinery,
//! internal chain transitivity and weak incompressibility on finite nets,
//! and ω-limit set construction and certification.
//!
//! The crate is organised around honest finite verdicts: every numeric
//! claim is backed by interval enclosures at a caller-chosen precision,
//! and anything the arithmetic cannot separate is reported as
//! ambiguous/uncertified rather than guessed.

pub mod chain;
pub mod kneading;
pub mod numeric;
pub mod omega;
mod par;
pub mod report;
pub mod symbolic;
pub mod tent;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("insufficient known prefix: wanted {wanted}, known {known}")]
    InsufficientPrefix { wanted: usize, known: usize },
    #[error("prefix is not admissible: empty pullback")]
    InadmissiblePrefix,
    #[error("uncertified: {0}")]
    Uncertified(String),
    #[error("ambiguous at working precision: {0}")]
    Ambiguous(String),
    #[error("slope search did not converge: {0}")]
    NoConvergence(String),
    #[error("no path in chain graph from {from} to {to}")]
    NoPath { from: usize, to: usize },
    #[error("no shadowing point found")]
    NoShadowFound,
    #[error("shadow branch cap exceeded")]
    CapExceeded,
    #[error("no delta in the grid passes calibration")]
    NonePass,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit status for the CLI: 2 for honest indecision, 1 for everything
    /// else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Ambiguous(_) | Error::Uncertified(_) => 2,
            _ => 1,
        }
    }
}

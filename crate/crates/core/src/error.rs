//! Error vocabulary shared across the engine.

use thiserror::Error;

/// Failure modes of the exact engine. Every variant carries a short
/// human-readable description of what was violated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Exact division was requested but the divisor does not divide the
    /// dividend. Inside the pipeline this always signals a broken identity,
    /// never bad user input.
    #[error("exact division failed: {0}")]
    Division(String),

    /// Invalid user-facing parameters (non-coprime pair, zero q, ...).
    #[error("invalid parameters: {0}")]
    Parameter(String),

    /// A series operation would exceed the configured polar depth budget.
    #[error("polar depth overflow: {0}")]
    PolarOverflow(String),

    /// A series operation was applied outside its domain (exp of a series
    /// with constant term, log away from 1, scaling poles by zero, ...).
    #[error("series domain violation: {0}")]
    SeriesDomain(String),

    /// A diagram-level operation received input of the wrong shape.
    #[error("structure violation: {0}")]
    Structure(String),

    /// The covering lift was applied to a denominator factor it is not
    /// defined on (index sharing a divisor with the covering order).
    #[error("lift domain violation: {0}")]
    LiftDomain(String),

    /// An internal cross-check between two computation routes failed.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

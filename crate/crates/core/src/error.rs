use thiserror::Error;

/// Errors raised by the analytic, lattice, measurement and waveguide routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A run configuration cannot produce a trustworthy result
    /// (lattice too short, window too narrow, bad grid).
    #[error("configuration error: {0}")]
    Config(String),

    /// A root or peak search exhausted its scan window.
    #[error("not found: {0}")]
    NotFound(String),

    /// An overlap or normalization integral vanished.
    #[error("degenerate: {0}")]
    Degenerate(String),

    /// The channel does not support a bound mode.
    #[error("no bound mode: {0}")]
    NoBoundMode(String),
}

pub type Result<T> = std::result::Result<T, Error>;

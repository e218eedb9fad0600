//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |h - h\u{2020}| = {deviation:.3e} exceeds {tol:.1e}")]
    NonHermitianInput { deviation: f64, tol: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown scenario `{0}` (expected `bell-vacuum` or `gg-one`)")]
    UnknownScenario(String),

    #[error("xi = {xi} lies outside the oscillator domain |xi| < {amplitude}")]
    OutOfDomain { xi: f64, amplitude: f64 },

    #[error("oscillator domain violation: {0}")]
    DomainViolation(String),

    #[error("not an X state: entry ({row},{col}) has magnitude {magnitude:.3e}")]
    NotXState {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid system parameters: {0}")]
    InvalidParams(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),
}

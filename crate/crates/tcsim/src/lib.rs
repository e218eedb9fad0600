//! Dynamics and entanglement of two two-level atoms coupled to a single-mode
//! cavity field, with a classical center-of-mass correction factor.
//!
//! The library is organized in layers:
//!
//! - [`qops`] — dense complex linear-algebra kernels (Kronecker products,
//!   Hermitian eigendecomposition, unitary propagators, partial trace).
//! - [`model`] — the truncated atoms ⊗ field Hilbert space, basis indexing,
//!   the free and interaction Hamiltonians, and initial states.
//! - [`evolution`] — numeric propagation and the closed-form reduced atomic
//!   density matrices for both supported initial states.
//! - [`entanglement`] — Wootters concurrence, with an X-state fast path.
//! - [`oscillator`] — classical center-of-mass statistics: the arcsine
//!   position density, displacement-window probabilities, and the
//!   two-plate factor `K`.
//! - [`scenarios`] — end-to-end corrected concurrences and the structural
//!   verification report.
//! - [`sweep`] — deterministic parallel grid evaluation for parameter
//!   surfaces.
//!
//! All times are handled as the dimensionless product `g·t`; `ħ = 1`
//! throughout.

pub mod entanglement;
pub mod error;
pub mod evolution;
pub mod model;
pub mod oscillator;
pub mod qops;
pub mod scenarios;
pub mod sweep;

pub use error::{Error, Result};
pub use evolution::DensityMatrix4;
pub use model::{Scenario, SystemParams};
pub use oscillator::{ComFactor, OscillatorSpec};
pub use scenarios::{ScenarioResult, VerificationReport};
pub use sweep::SweepGrid;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix in row-major storage.
pub type CMatrix = ndarray::Array2<C64>;

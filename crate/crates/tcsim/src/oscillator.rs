//! Classical center-of-mass statistics of the oscillating plates.
//!
//! Each plate carries one atom and oscillates with the dimensionless
//! coordinate `ξ(t) = √(2n+1)·sin(Ωt + δ)`, where `n` is the oscillator
//! quantum number, `δ` the initial phase, and `Ω` the mechanical frequency.
//! (`ξ = αx` with `α = √(MΩ/ħ)`; the mass `M` and frequency `Ω` never enter
//! the numbers below on their own — only the combinations `r` and `δ` do.)
//!
//! The time-averaged position density is the arcsine law
//! `w(ξ) = 1/(π√((2n+1) − ξ²))`. Because the mechanical motion is slow
//! compared with the atom-field coupling, the probability that a plate sits
//! within a displacement window `ζ` above its initial position
//! `ξ₀ = √(2n+1)·sin δ` is the unnormalized integral of `w` over that
//! window, which evaluates to `(1/π)[arcsin(r + sin δ) − δ]` with the
//! relative displacement `r = ζ/√(2n+1)`.
//!
//! The product of the two plates' probabilities is the factor `K(δ₁, δ₂)`
//! multiplying both scenario concurrences. It depends on the plates only
//! through `(r, δ)` — never on the absolute amplitudes — and is small
//! (≈ 10⁻²–10⁻⁴ for `r = 0.05`), which is what suppresses the corrected
//! entanglement by orders of magnitude.
//!
//! Only `δ ∈ [0, π/2)` with `r + sin δ ≤ 1` is accepted: beyond that the
//! window would cross the turning point and the arcsine is undefined. The
//! `ξ < 0` half-line is ignored as a modeling assumption (it does not affect
//! the entanglement); negative phases are rejected rather than extended by
//! symmetry.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};

/// Slack for the boundary `r + sin δ = 1`: grid points placed exactly at
/// `δ = arcsin(1 − r)` must not be rejected by floating-point wobble.
const BOUNDARY_TOL: f64 = 1e-12;

/// One plate's classical oscillation: quantum number `n` (amplitude
/// `√(2n+1)` in ξ-units), initial phase `delta`, and displacement window
/// `zeta`. The relative displacement `r = zeta/√(2n+1)` is fixed at
/// construction and is the only amplitude-dependent quantity used
/// downstream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSpec {
    n: u64,
    zeta: f64,
    delta: f64,
    r: f64,
}

impl OscillatorSpec {
    /// Build from the quantum number, the absolute displacement window, and
    /// the initial phase.
    pub fn from_quantum_number(n: u64, zeta: f64, delta: f64) -> Result<Self> {
        let amplitude = ((2 * n + 1) as f64).sqrt();
        Self::validated(n, zeta, delta, zeta / amplitude)
    }

    /// Build directly from the relative displacement `r`; the quantum number
    /// defaults to 0 so that `zeta = r`.
    pub fn from_relative(r: f64, delta: f64) -> Result<Self> {
        Self::validated(0, r, delta, r)
    }

    fn validated(n: u64, zeta: f64, delta: f64, r: f64) -> Result<Self> {
        if !r.is_finite() || r <= 0.0 || r >= 1.0 {
            return Err(Error::DomainViolation(format!(
                "relative displacement r = zeta/sqrt(2n+1) must satisfy 0 < r < 1, got {r}"
            )));
        }
        if !delta.is_finite() || delta < 0.0 {
            return Err(Error::DomainViolation(format!(
                "initial phase delta must satisfy 0 <= delta, got {delta}"
            )));
        }
        if delta >= FRAC_PI_2 {
            return Err(Error::DomainViolation(format!(
                "initial phase delta must be below pi/2, got {delta}"
            )));
        }
        let reach = r + delta.sin();
        if reach > 1.0 + BOUNDARY_TOL {
            return Err(Error::DomainViolation(format!(
                "r + sin(delta) = {reach:.6} exceeds 1: the plate would pass its turning point"
            )));
        }
        Ok(Self { n, zeta, delta, r })
    }

    /// A spec with a different quantum number but the identical relative
    /// displacement (the window `zeta` is rescaled by the amplitude ratio).
    /// The stored `r` is copied bit-for-bit, so every derived quantity is
    /// unchanged.
    pub fn rescaled(&self, n: u64) -> OscillatorSpec {
        let amplitude = ((2 * n + 1) as f64).sqrt();
        OscillatorSpec {
            n,
            zeta: self.r * amplitude,
            delta: self.delta,
            r: self.r,
        }
    }

    pub fn quantum_number(&self) -> u64 {
        self.n
    }

    /// Oscillation amplitude `√(2n+1)` in ξ-units.
    pub fn amplitude(&self) -> f64 {
        ((2 * self.n + 1) as f64).sqrt()
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Relative displacement `r = zeta/√(2n+1)`.
    pub fn relative_displacement(&self) -> f64 {
        self.r
    }

    /// Largest admissible phase for this `r`, `arcsin(1 − r)`.
    pub fn max_delta(&self) -> f64 {
        (1.0 - self.r).asin()
    }
}

/// Arcsine position density `w(ξ) = 1/(π√((2n+1) − ξ²))` of a classical
/// oscillator with quantum number `n`. Defined for `|ξ| < √(2n+1)` and
/// divergent toward the turning points.
pub fn density_w(xi: f64, n: u64) -> Result<f64> {
    let amp_sq = (2 * n + 1) as f64;
    let amplitude = amp_sq.sqrt();
    if xi.is_nan() || xi.abs() >= amplitude {
        return Err(Error::OutOfDomain { xi, amplitude });
    }
    Ok(1.0 / (PI * (amp_sq - xi * xi).sqrt()))
}

/// Plate trajectory `ξ = √(2n+1)·sin(phase + δ)` with `phase ≡ Ωt`.
pub fn trajectory(spec: &OscillatorSpec, phase: f64) -> f64 {
    spec.amplitude() * (phase + spec.delta).sin()
}

/// Probability that the plate lies in the window `[ξ₀, ξ₀ + ζ]` above its
/// initial position `ξ₀ = √(2n+1)·sin δ`:
/// `(1/π)[arcsin(r + sin δ) − δ]`, a value in `(0, 1/2]`.
pub fn plate_probability(spec: &OscillatorSpec) -> f64 {
    let reach = (spec.r + spec.delta.sin()).min(1.0);
    (reach.asin() - spec.delta) / PI
}

/// The two-plate center-of-mass factor. `k` is exactly the product of the
/// per-plate window probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComFactor {
    pub k: f64,
    pub per_plate: [f64; 2],
}

/// Factor `K(δ₁, δ₂)` multiplying both scenario concurrences:
/// `(1/π²)[arcsin(r₁ + sin δ₁) − δ₁][arcsin(r₂ + sin δ₂) − δ₂]`.
pub fn com_factor(spec1: &OscillatorSpec, spec2: &OscillatorSpec) -> ComFactor {
    let p1 = plate_probability(spec1);
    let p2 = plate_probability(spec2);
    ComFactor {
        k: p1 * p2,
        per_plate: [p1, p2],
    }
}

/// Largest attainable `K` for equal relative displacements `r` on both
/// plates: `(π/2 − arcsin(1 − r))²/π²`, reached at `δ₁ = δ₂ = arcsin(1 − r)`.
pub fn k_max(r: f64) -> f64 {
    let p = (FRAC_PI_2 - (1.0 - r).asin()) / PI;
    p * p
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    ((b - a) * (fa + 4.0 * fm + fb) / 6.0, mid, fm)
}

fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    whole: f64,
    mid: f64,
    fm: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let (left, lmid, flm) = simpson(f, a, fa, mid, fm);
    let (right, rmid, frm) = simpson(f, mid, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_simpson(f, a, fa, mid, fm, left, lmid, flm, 0.5 * tol, depth - 1)
        + adaptive_simpson(f, mid, fm, b, fb, right, rmid, frm, 0.5 * tol, depth - 1)
}

/// Integrate `f` over `[a, b]` by adaptive Simpson quadrature to absolute
/// tolerance `tol`.
fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, mid, fm) = simpson(&f, a, fa, b, fb);
    adaptive_simpson(&f, a, fa, b, fb, whole, mid, fm, tol, 40)
}

/// Numerical quadrature of `w(ξ)` over the plate's displacement window
/// `[ξ₀, ξ₀ + ζ]` — the independent cross-check of [`plate_probability`].
///
/// Plain quadrature is useless near the turning points where `w` diverges,
/// so the substitution `ξ = √(2n+1)·sin θ` removes the inverse-square-root
/// endpoint singularity; the transformed integrand is evaluated through
/// [`density_w`] at every interior point.
pub fn plate_probability_quadrature(spec: &OscillatorSpec, tol: f64) -> f64 {
    let amplitude = spec.amplitude();
    let n = spec.n;
    let xi0 = amplitude * spec.delta.sin();
    let xi1 = (xi0 + spec.zeta).min(amplitude);
    let theta0 = (xi0 / amplitude).clamp(-1.0, 1.0).asin();
    let theta1 = (xi1 / amplitude).clamp(-1.0, 1.0).asin();
    let integrand = move |theta: f64| {
        let xi = amplitude * theta.sin();
        match density_w(xi, n) {
            Ok(w) => w * amplitude * theta.cos(),
            // removable singularity at |θ| = π/2 where rounding puts ξ on
            // the turning point
            Err(_) => 1.0 / PI,
        }
    };
    integrate(integrand, theta0, theta1, tol)
}

/// Quadrature of `w(ξ)` over the whole domain `(−√(2n+1), √(2n+1))`,
/// expected to equal 1.
pub fn density_normalization_quadrature(n: u64, tol: f64) -> f64 {
    let amplitude = ((2 * n + 1) as f64).sqrt();
    let integrand = move |theta: f64| {
        let xi = amplitude * theta.sin();
        match density_w(xi, n) {
            Ok(w) => w * amplitude * theta.cos(),
            Err(_) => 1.0 / PI,
        }
    };
    integrate(integrand, -FRAC_PI_2, FRAC_PI_2, tol)
}

//! The truncated composite Hilbert space, its basis indexing, the free and
//! interaction Hamiltonians, and initial states.
//!
//! # Basis conventions
//!
//! The atomic basis is ordered `{|ee⟩, |eg⟩, |ge⟩, |gg⟩}` (atom A first).
//! The composite flat index is `4·photons + atomic`, bijective with
//! `0..4(n_max+1)`, so the field is the outer tensor factor and full-space
//! operators are assembled as `kron(field_op, atomic_op)`.
//!
//! Atom A sits at `z = −z₀` and atom B at `z = +z₀`; the positions enter only
//! through the phases `e^{∓i·kz₀}` on the interaction terms.
//!
//! The raising operator on the truncated field maps `|n_max⟩` to zero, i.e.
//! the Hamiltonians are the projections `P·H·P` onto the kept Fock levels.
//! Both supported initial states evolve inside excitation sectors ≤ 2, so any
//! `n_max ≥ 2` reproduces their dynamics exactly.

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qops::kron;
use crate::{C64, CMatrix};

/// Dimensionless model parameters.
///
/// `g` is the atom-field coupling; all time enters as the product `g·t`.
/// `omega` is the common resonant frequency `ω_A = ω_B = ω` in units of `g`;
/// it only appears in the free Hamiltonian. `kz0` is the phase `k·z₀` in
/// radians. `n_max` is the Fock truncation (largest kept photon number).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    pub g: f64,
    pub kz0: f64,
    pub omega: f64,
    pub n_max: usize,
}

impl SystemParams {
    /// Validated constructor. Requires `g > 0` and `n_max ≥ 2` (the smallest
    /// truncation that closes the excitation sectors reached by the
    /// supported initial states).
    pub fn new(g: f64, kz0: f64, omega: f64, n_max: usize) -> Result<Self> {
        if g.is_nan() || g <= 0.0 {
            return Err(Error::InvalidParams(format!("coupling g must be > 0, got {g}")));
        }
        if n_max < 2 {
            return Err(Error::InvalidParams(format!(
                "n_max must be >= 2 (the initial states reach |gg,2⟩), got {n_max}"
            )));
        }
        Ok(Self { g, kz0, omega, n_max })
    }

    /// Unit coupling, resonance at `ω = g`, phase `kz₀`, truncation `n_max`.
    pub fn with_kz0(kz0: f64, n_max: usize) -> Result<Self> {
        Self::new(1.0, kz0, 1.0, n_max)
    }

    /// Dimension of the kept Fock space, `n_max + 1`.
    pub fn fock_dim(&self) -> usize {
        self.n_max + 1
    }

    /// Dimension of the composite space, `4(n_max + 1)`.
    pub fn dim(&self) -> usize {
        4 * self.fock_dim()
    }
}

/// One atom's level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomLevel {
    Excited,
    Ground,
}

/// A composite basis state `|atom_a, atom_b⟩ ⊗ |photons⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndex {
    pub atom_a: AtomLevel,
    pub atom_b: AtomLevel,
    pub photons: usize,
}

impl BasisIndex {
    /// Position within the atomic basis `{|ee⟩, |eg⟩, |ge⟩, |gg⟩}`.
    pub fn atomic_index(&self) -> usize {
        match (self.atom_a, self.atom_b) {
            (AtomLevel::Excited, AtomLevel::Excited) => 0,
            (AtomLevel::Excited, AtomLevel::Ground) => 1,
            (AtomLevel::Ground, AtomLevel::Excited) => 2,
            (AtomLevel::Ground, AtomLevel::Ground) => 3,
        }
    }

    /// Flat composite index, `4·photons + atomic`.
    pub fn flat(&self) -> usize {
        4 * self.photons + self.atomic_index()
    }

    /// Inverse of [`flat`](Self::flat).
    pub fn from_flat(index: usize) -> Self {
        let (atom_a, atom_b) = match index % 4 {
            0 => (AtomLevel::Excited, AtomLevel::Excited),
            1 => (AtomLevel::Excited, AtomLevel::Ground),
            2 => (AtomLevel::Ground, AtomLevel::Excited),
            _ => (AtomLevel::Ground, AtomLevel::Ground),
        };
        BasisIndex {
            atom_a,
            atom_b,
            photons: index / 4,
        }
    }

    /// Total excitation number: photons plus excited atoms.
    pub fn excitation(&self) -> usize {
        let excited = |level| if level == AtomLevel::Excited { 1 } else { 0 };
        self.photons + excited(self.atom_a) + excited(self.atom_b)
    }
}

/// Supported initial states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scenario {
    /// `(|ee⟩ + |gg⟩)/√2 ⊗ |0⟩` — an atomic Bell state with the field in
    /// vacuum.
    #[serde(rename = "bell-vacuum")]
    BellVacuum,
    /// `|gg⟩ ⊗ |1⟩` — both atoms in the ground state, one photon.
    #[serde(rename = "gg-one")]
    GgOne,
}

impl Scenario {
    pub fn id(&self) -> &'static str {
        match self {
            Scenario::BellVacuum => "bell-vacuum",
            Scenario::GgOne => "gg-one",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bell-vacuum" => Ok(Scenario::BellVacuum),
            "gg-one" => Ok(Scenario::GgOne),
            other => Err(Error::UnknownScenario(other.to_string())),
        }
    }
}

/// Annihilation operator on the truncated Fock space: `a|n⟩ = √n |n−1⟩`.
pub fn annihilation_op(fock_dim: usize) -> CMatrix {
    let mut a: CMatrix = Array2::zeros((fock_dim, fock_dim));
    for n in 1..fock_dim {
        a[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    a
}

fn atomic_op(entries: &[(usize, usize)]) -> CMatrix {
    let mut m: CMatrix = Array2::zeros((4, 4));
    for &(i, j) in entries {
        m[[i, j]] = C64::new(1.0, 0.0);
    }
    m
}

/// Raising operator of atom A on the atomic basis: `|ee⟩⟨ge| + |eg⟩⟨gg|`.
fn sigma_plus_a() -> CMatrix {
    atomic_op(&[(0, 2), (1, 3)])
}

/// Raising operator of atom B: `|ee⟩⟨eg| + |ge⟩⟨gg|`.
fn sigma_plus_b() -> CMatrix {
    atomic_op(&[(0, 1), (2, 3)])
}

/// Interaction Hamiltonian under the rotating-wave approximation,
/// `H_I = g Σ_{i=A,B} [a σᵢ⁺ e^{i·k·zᵢ} + a† σᵢ⁻ e^{−i·k·zᵢ}]`
/// with `z_A = −z₀`, `z_B = +z₀` and `ħ = 1`.
///
/// The result is Hermitian by construction and conserves the total
/// excitation number (block structure over excitation sectors).
pub fn build_interaction_hamiltonian(p: &SystemParams) -> CMatrix {
    let fock = p.fock_dim();
    let a = annihilation_op(fock);
    let adag = crate::qops::adjoint(&a);
    let phase_a = (C64::i() * (-p.kz0)).exp(); // e^{i k z_A}
    let phase_b = (C64::i() * p.kz0).exp(); // e^{i k z_B}

    let sp_a = sigma_plus_a();
    let sm_a = crate::qops::adjoint(&sp_a);
    let sp_b = sigma_plus_b();
    let sm_b = crate::qops::adjoint(&sp_b);

    let mut h = kron(&a, &sp_a).mapv(|z| z * phase_a);
    h = h + kron(&adag, &sm_a).mapv(|z| z * phase_a.conj());
    h = h + kron(&a, &sp_b).mapv(|z| z * phase_b);
    h = h + kron(&adag, &sm_b).mapv(|z| z * phase_b.conj());
    h.mapv(|z| z * p.g)
}

/// Free Hamiltonian `H₀ = ½ω σ_A^z + ½ω σ_B^z + ω a†a` at resonance,
/// diagonal in the composite basis.
pub fn build_free_hamiltonian(p: &SystemParams) -> CMatrix {
    let dim = p.dim();
    let mut h: CMatrix = Array2::zeros((dim, dim));
    for index in 0..dim {
        let basis = BasisIndex::from_flat(index);
        let z = |level| if level == AtomLevel::Excited { 0.5 } else { -0.5 };
        let energy = p.omega * (z(basis.atom_a) + z(basis.atom_b) + basis.photons as f64);
        h[[index, index]] = C64::new(energy, 0.0);
    }
    h
}

/// Total excitation operator `N = a†a + ½(σ_A^z + σ_B^z) + 1`, diagonal with
/// non-negative integer spectrum. Commutes with the interaction Hamiltonian.
pub fn total_excitation_op(n_max: usize) -> CMatrix {
    let dim = 4 * (n_max + 1);
    let mut op: CMatrix = Array2::zeros((dim, dim));
    for index in 0..dim {
        let n = BasisIndex::from_flat(index).excitation();
        op[[index, index]] = C64::new(n as f64, 0.0);
    }
    op
}

/// Full-space density matrix of the requested initial state.
///
/// The plate oscillations are handled classically downstream (see the
/// `oscillator` module); they do not enter the quantum state.
pub fn build_initial_state(kind: Scenario, p: &SystemParams) -> CMatrix {
    let dim = p.dim();
    let mut rho: CMatrix = Array2::zeros((dim, dim));
    match kind {
        Scenario::BellVacuum => {
            // (|ee,0⟩ + |gg,0⟩)/√2 as a projector
            let ee0 = 0;
            let gg0 = 3;
            let half = C64::new(0.5, 0.0);
            rho[[ee0, ee0]] = half;
            rho[[gg0, gg0]] = half;
            rho[[ee0, gg0]] = half;
            rho[[gg0, ee0]] = half;
        }
        Scenario::GgOne => {
            let gg1 = BasisIndex {
                atom_a: AtomLevel::Ground,
                atom_b: AtomLevel::Ground,
                photons: 1,
            }
            .flat();
            rho[[gg1, gg1]] = C64::new(1.0, 0.0);
        }
    }
    rho
}

//! State propagation and the closed-form reduced atomic density matrices.
//!
//! Two independent routes to the two-atom reduced state are provided:
//!
//! - a numeric route — exponentiate the interaction Hamiltonian by
//!   eigendecomposition, conjugate the initial state, trace out the field;
//! - an analytic route — evaluate the closed-form 4×4 matrices directly.
//!
//! For the Bell-vacuum start the reduced state is, with `θ = √6·gt` and
//! `c = cos θ`:
//!
//! ```text
//! ρ11 = (c+2)²/18     ρ14 = (c+2)/6
//! ρ22 = ρ33 = sin²θ/12    ρ23 = (sin²θ/12)·e^{−2i·kz0}
//! ρ44 = (c−1)²/9 + 1/2
//! ```
//!
//! For the `|gg,1⟩` start, with `φ = √2·gt`:
//!
//! ```text
//! ρ22 = ρ33 = sin²φ/2     ρ23 = (sin²φ/2)·e^{−2i·kz0}
//! ρ44 = cos²φ
//! ```
//!
//! Both are normalized to unit trace; the classical center-of-mass factor is
//! applied downstream at the concurrence level (see the `scenarios` module),
//! which reproduces the factored corrected concurrences while keeping the
//! density-matrix invariants intact.
//!
//! A note on symbols: the closed-form propagator's Rabi operator is written
//! `Ω̂` here with `Ω̂² = 2g²(2a†a + 1)`; the plain `Ω` is reserved for the
//! mechanical plate frequency in the `oscillator` module.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::model::{self, Scenario, SystemParams};
use crate::qops;
use crate::{C64, CMatrix};

/// Hermiticity/trace tolerance for validated 4×4 density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

/// A validated 4×4 two-atom density matrix in the atomic basis
/// `{|ee⟩, |eg⟩, |ge⟩, |gg⟩}`: Hermitian, unit trace, positive semidefinite
/// (eigenvalues ≥ −1e-10).
#[derive(Debug, Clone)]
pub struct DensityMatrix4 {
    matrix: CMatrix,
}

impl DensityMatrix4 {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let (rows, cols) = matrix.dim();
        if rows != 4 || cols != 4 {
            return Err(Error::InvalidDensityMatrix(format!(
                "expected 4x4, got {rows}x{cols}"
            )));
        }
        let herm_dev = qops::hermiticity_deviation(&matrix);
        if herm_dev > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian: deviation {herm_dev:.3e}"
            )));
        }
        let trace: C64 = matrix.diag().iter().sum();
        if (trace - C64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {trace} is not 1"
            )));
        }
        let eig = qops::hermitian_eig(&matrix)?;
        if let Some(min) = eig
            .eigenvalues
            .iter()
            .cloned()
            .reduce(f64::min)
        {
            if min < -DENSITY_TOL {
                return Err(Error::InvalidDensityMatrix(format!(
                    "negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[[row, col]]
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }
}

/// Conjugate a full-space density matrix by the interaction propagator:
/// `U ρ₀ U†` with `U = exp(−i H_I t)` and `t = gt/g`.
pub fn propagate_numeric(rho0: &CMatrix, p: &SystemParams, gt: f64) -> Result<CMatrix> {
    let dim = p.dim();
    if rho0.dim() != (dim, dim) {
        return Err(Error::DimensionMismatch(format!(
            "initial state is {:?}, parameters require {dim}x{dim}",
            rho0.dim()
        )));
    }
    let h = model::build_interaction_hamiltonian(p);
    let u = qops::unitary_propagator(&h, gt / p.g)?;
    Ok(u.dot(rho0).dot(&qops::adjoint(&u)))
}

/// Numeric route to the reduced two-atom state: build the initial state,
/// propagate, trace out the field.
pub fn reduced_atoms_numeric(kind: Scenario, p: &SystemParams, gt: f64) -> Result<DensityMatrix4> {
    let rho0 = model::build_initial_state(kind, p);
    let rho_t = propagate_numeric(&rho0, p, gt)?;
    let reduced = qops::partial_trace_field(&rho_t, p.fock_dim())?;
    DensityMatrix4::new(reduced)
}

fn x_shaped(diag: [f64; 4], rho14: C64, rho23: C64) -> CMatrix {
    let mut m: CMatrix = Array2::zeros((4, 4));
    for (i, d) in diag.into_iter().enumerate() {
        m[[i, i]] = C64::new(d, 0.0);
    }
    m[[0, 3]] = rho14;
    m[[3, 0]] = rho14.conj();
    m[[1, 2]] = rho23;
    m[[2, 1]] = rho23.conj();
    m
}

/// Closed-form reduced state for the Bell-vacuum start.
pub fn analytic_rho_state1(gt: f64, kz0: f64) -> DensityMatrix4 {
    let theta = 6f64.sqrt() * gt;
    let c = theta.cos();
    let s2 = theta.sin().powi(2);
    let rho11 = (c + 2.0).powi(2) / 18.0;
    let rho22 = s2 / 12.0;
    let rho44 = (c - 1.0).powi(2) / 9.0 + 0.5;
    let rho14 = C64::new((c + 2.0) / 6.0, 0.0);
    let rho23 = C64::new(s2 / 12.0, 0.0) * (C64::i() * (-2.0 * kz0)).exp();
    DensityMatrix4::new(x_shaped([rho11, rho22, rho22, rho44], rho14, rho23))
        .expect("closed-form state 1 is a valid density matrix")
}

/// Closed-form reduced state for the `|gg,1⟩` start.
///
/// The ρ23 coherence carries the phase `e^{−2i·kz0}` for consistency with
/// the closed-form propagator; only its magnitude enters the concurrence.
pub fn analytic_rho_state2(gt: f64, kz0: f64) -> DensityMatrix4 {
    let phi = 2f64.sqrt() * gt;
    let s2h = 0.5 * phi.sin().powi(2);
    let c2 = phi.cos().powi(2);
    let rho23 = C64::new(s2h, 0.0) * (C64::i() * (-2.0 * kz0)).exp();
    DensityMatrix4::new(x_shaped([0.0, s2h, s2h, c2], C64::new(0.0, 0.0), rho23))
        .expect("closed-form state 2 is a valid density matrix")
}

/// Closed-form interaction propagator on the truncated space.
///
/// The matrix is assembled from 16 atomic-basis blocks built out of the
/// ladder operators and spectral functions of the Rabi operator
/// `Ω̂² = 2g²(a a† + a†a)` (equal to `2g²(2a†a + 1)` before truncation;
/// evaluating it through the truncated ladder products keeps the assembled
/// propagator exactly unitary and exactly equal to the eigendecomposition
/// exponential of the truncated Hamiltonian, boundary sectors included).
///
/// With `Θ̂ = Ω̂⁻²`, `C = Θ̂ cos Ω̂t`, `S = Ω̂⁻¹ sin Ω̂t` the blocks are
///
/// ```text
/// [ 2g²a(C−Θ̂)a† + 1   −iga S e^{ikz₀}     −iga S e^{−ikz₀}    2g²a(C−Θ̂)a     ]
/// [ −igS a† e^{−ikz₀}  (cos Ω̂t+1)/2       e^{−2ikz₀}(cos Ω̂t−1)/2  −igS a e^{−ikz₀} ]
/// [ −igS a† e^{ikz₀}   e^{2ikz₀}(cos Ω̂t−1)/2   (cos Ω̂t+1)/2    −igS a e^{ikz₀}  ]
/// [ 2g²a†(C−Θ̂)a†      −iga† S e^{ikz₀}    −iga† S e^{−ikz₀}   2g²a†(C−Θ̂)a + 1 ]
/// ```
pub fn closed_form_propagator(p: &SystemParams, gt: f64) -> CMatrix {
    let fock = p.fock_dim();
    let a = model::annihilation_op(fock);
    let adag = qops::adjoint(&a);

    // Diagonal of a a† + a†a on the truncated space: 2n+1, except n_max where
    // the dropped raising transition leaves just n_max.
    let chain: Vec<f64> = (0..fock)
        .map(|n| {
            if n < p.n_max {
                (2 * n + 1) as f64
            } else {
                p.n_max as f64
            }
        })
        .collect();

    // Dimensionless spectral functions of Ω̂ = g√(2·chain): 2g²(C−Θ̂), g·S,
    // and the two cosine combinations. All depend on g and t only through gt.
    let mut d_cm = vec![0.0f64; fock]; // 2g²(C−Θ̂)
    let mut d_s = vec![0.0f64; fock]; // g·S
    let mut d_cos_p = vec![0.0f64; fock]; // (cos Ω̂t + 1)/2
    let mut d_cos_m = vec![0.0f64; fock]; // (cos Ω̂t − 1)/2
    for n in 0..fock {
        let omega_t = (2.0 * chain[n]).sqrt() * gt;
        let (sin, cos) = omega_t.sin_cos();
        d_cm[n] = (cos - 1.0) / chain[n];
        d_s[n] = sin / (2.0 * chain[n]).sqrt();
        d_cos_p[n] = 0.5 * (cos + 1.0);
        d_cos_m[n] = 0.5 * (cos - 1.0);
    }

    let diag = |values: &[f64]| -> CMatrix {
        let mut m: CMatrix = Array2::zeros((fock, fock));
        for (n, v) in values.iter().enumerate() {
            m[[n, n]] = C64::new(*v, 0.0);
        }
        m
    };

    let one = qops::identity(fock);
    let neg_i = C64::new(0.0, -1.0);
    let ep = (C64::i() * p.kz0).exp(); // e^{+i kz0}
    let em = ep.conj();

    let cm = diag(&d_cm);
    let s = diag(&d_s);
    let a_cm = a.dot(&cm);
    let adag_cm = adag.dot(&cm);
    let a_s = a.dot(&s);
    let s_a = s.dot(&a);
    let s_adag = s.dot(&adag);
    let adag_s = adag.dot(&s);

    // blocks[i][j] is the (fock × fock) operator for the atomic transition
    // |i⟩⟨j| in the basis {ee, eg, ge, gg}
    let blocks: [[CMatrix; 4]; 4] = [
        [
            a_cm.dot(&adag) + &one,
            a_s.mapv(|z| z * neg_i * ep),
            a_s.mapv(|z| z * neg_i * em),
            a_cm.dot(&a),
        ],
        [
            s_adag.mapv(|z| z * neg_i * em),
            diag(&d_cos_p),
            diag(&d_cos_m).mapv(|z| z * em * em),
            s_a.mapv(|z| z * neg_i * em),
        ],
        [
            s_adag.mapv(|z| z * neg_i * ep),
            diag(&d_cos_m).mapv(|z| z * ep * ep),
            diag(&d_cos_p),
            s_a.mapv(|z| z * neg_i * ep),
        ],
        [
            adag_cm.dot(&adag),
            adag_s.mapv(|z| z * neg_i * ep),
            adag_s.mapv(|z| z * neg_i * em),
            adag_cm.dot(&a) + &one,
        ],
    ];

    let dim = p.dim();
    let mut u: CMatrix = Array2::zeros((dim, dim));
    for (ai, row) in blocks.iter().enumerate() {
        for (aj, block) in row.iter().enumerate() {
            for nf in 0..fock {
                for mf in 0..fock {
                    let z = block[[nf, mf]];
                    if z != C64::new(0.0, 0.0) {
                        u[[4 * nf + ai, 4 * mf + aj]] = z;
                    }
                }
            }
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::{adjoint, frobenius_distance, identity};

    fn params(kz0: f64, n_max: usize) -> SystemParams {
        SystemParams::with_kz0(kz0, n_max).unwrap()
    }

    const SQRT6: f64 = 2.449489742783178;
    const SQRT2: f64 = std::f64::consts::SQRT_2;
    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn density_matrix_validation() {
        let bell = analytic_rho_state1(0.0, 0.0);
        assert!((bell.entry(0, 0).re - 0.5).abs() < 1e-15);
        // a non-Hermitian matrix is rejected
        let mut bad = bell.matrix().clone();
        bad[[0, 1]] = C64::new(0.3, 0.0);
        assert!(matches!(
            DensityMatrix4::new(bad),
            Err(Error::InvalidDensityMatrix(_))
        ));
        // a trace-deficient matrix is rejected
        let half = bell.matrix().mapv(|z| z * 0.5);
        assert!(DensityMatrix4::new(half).is_err());
    }

    #[test]
    fn propagate_at_zero_time_is_identity() {
        let p = params(0.3, 3);
        let rho0 = model::build_initial_state(Scenario::BellVacuum, &p);
        let rho = propagate_numeric(&rho0, &p, 0.0).unwrap();
        assert!(frobenius_distance(&rho, &rho0) < 1e-13);
    }

    #[test]
    fn propagate_rejects_mismatched_dimensions() {
        let p = params(0.0, 3);
        let rho0 = model::build_initial_state(Scenario::BellVacuum, &params(0.0, 4));
        assert!(matches!(
            propagate_numeric(&rho0, &p, 1.0),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn bell_vacuum_support_stays_in_sectors_zero_and_two() {
        let p = params(0.45, 4);
        let rho0 = model::build_initial_state(Scenario::BellVacuum, &p);
        let rho = propagate_numeric(&rho0, &p, 1.234).unwrap();
        for ((i, j), z) in rho.indexed_iter() {
            let ni = model::BasisIndex::from_flat(i).excitation();
            let nj = model::BasisIndex::from_flat(j).excitation();
            if ni != 0 && ni != 2 || nj != 0 && nj != 2 {
                assert!(
                    z.norm() < 1e-12,
                    "support leaked to sectors ({ni},{nj}) at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn gg_one_full_rabi_cycle_returns() {
        let p = params(0.0, 4);
        let rho0 = model::build_initial_state(Scenario::GgOne, &p);
        let gt = PI / SQRT2; // √2·gt = π
        let rho = propagate_numeric(&rho0, &p, gt).unwrap();
        assert!(frobenius_distance(&rho, &rho0) < 1e-10);
    }

    #[test]
    fn reduced_bell_vacuum_at_zero_time() {
        let p = params(0.0, 2);
        let rho = reduced_atoms_numeric(Scenario::BellVacuum, &p, 0.0).unwrap();
        assert!((rho.entry(0, 0).re - 0.5).abs() < 1e-13);
        assert!((rho.entry(3, 3).re - 0.5).abs() < 1e-13);
        assert!((rho.entry(0, 3).re - 0.5).abs() < 1e-13);
    }

    #[test]
    fn reduced_gg_one_at_quarter_period() {
        let p = params(0.0, 2);
        let gt = PI / (2.0 * SQRT2); // √2·gt = π/2
        let rho = reduced_atoms_numeric(Scenario::GgOne, &p, gt).unwrap();
        assert!((rho.entry(1, 1).re - 0.5).abs() < 1e-10);
        assert!((rho.entry(2, 2).re - 0.5).abs() < 1e-10);
        assert!((rho.entry(1, 2).norm() - 0.5).abs() < 1e-10);
        assert!(rho.entry(3, 3).norm() < 1e-10);
    }

    #[test]
    fn reduced_bell_vacuum_at_half_period() {
        // √6·gt = π: cos = −1
        let p = params(0.0, 4);
        let gt = PI / SQRT6;
        let rho = reduced_atoms_numeric(Scenario::BellVacuum, &p, gt).unwrap();
        assert!((rho.entry(0, 0).re - 1.0 / 18.0).abs() < 1e-10);
        assert!((rho.entry(0, 3).re - 1.0 / 6.0).abs() < 1e-10);
        assert!(rho.entry(1, 1).norm() < 1e-10);
        assert!(rho.entry(2, 2).norm() < 1e-10);
        assert!((rho.entry(3, 3).re - 17.0 / 18.0).abs() < 1e-10);
    }

    #[test]
    fn analytic_state1_examples() {
        let bell = analytic_rho_state1(0.0, 0.0);
        for (i, j, v) in [(0, 0, 0.5), (3, 3, 0.5), (0, 3, 0.5)] {
            assert!((bell.entry(i, j).re - v).abs() < 1e-15);
        }
        // √6 gt = π/2
        let rho = analytic_rho_state1(PI / (2.0 * SQRT6), 0.0);
        assert!((rho.entry(0, 0).re - 4.0 / 18.0).abs() < 1e-12);
        assert!((rho.entry(1, 1).re - 1.0 / 12.0).abs() < 1e-12);
        assert!((rho.entry(1, 2).re - 1.0 / 12.0).abs() < 1e-12);
        assert!((rho.entry(0, 3).re - 2.0 / 6.0).abs() < 1e-12);
        assert!((rho.entry(3, 3).re - (1.0 / 9.0 + 0.5)).abs() < 1e-12);
    }

    #[test]
    fn analytic_state2_examples() {
        let start = analytic_rho_state2(0.0, 0.0);
        assert!((start.entry(3, 3).re - 1.0).abs() < 1e-15);
        let rho = analytic_rho_state2(PI / (2.0 * SQRT2), 0.7);
        assert!((rho.entry(1, 1).re - 0.5).abs() < 1e-12);
        assert!((rho.entry(1, 2).norm() - 0.5).abs() < 1e-12);
        assert!(rho.entry(3, 3).norm() < 1e-12);
        // coherence phase e^{−2i kz0}
        let expected = C64::new(0.5, 0.0) * (C64::i() * (-1.4)).exp();
        assert!((rho.entry(1, 2) - expected).norm() < 1e-12);
    }

    #[test]
    fn trace_identity_of_state1_is_exact() {
        for k in 0..1000 {
            let gt = 4.0 * PI * k as f64 / 999.0;
            let c = (SQRT6 * gt).cos();
            let total = (c + 2.0).powi(2) / 18.0
                + (1.0 - c * c) / 6.0
                + (c - 1.0).powi(2) / 9.0
                + 0.5;
            assert!((total - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn state1_psd_witness_rho11_rho44_dominates_coherence() {
        for k in 0..400 {
            let gt = 4.0 * PI * k as f64 / 399.0;
            let rho = analytic_rho_state1(gt, 0.0);
            let witness = rho.entry(0, 0).re * rho.entry(3, 3).re - rho.entry(0, 3).norm_sqr();
            assert!(witness >= -1e-15);
        }
    }

    #[test]
    fn analytic_states_are_periodic() {
        let period1 = 2.0 * PI / SQRT6;
        let period2 = PI / SQRT2;
        for k in 0..25 {
            let gt = 0.37 + k as f64 * 0.41;
            let d1 = frobenius_distance(
                analytic_rho_state1(gt, 0.9).matrix(),
                analytic_rho_state1(gt + period1, 0.9).matrix(),
            );
            assert!(d1 < 1e-12, "state-1 period violated: {d1:.3e}");
            let d2 = frobenius_distance(
                analytic_rho_state2(gt, 0.9).matrix(),
                analytic_rho_state2(gt + period2, 0.9).matrix(),
            );
            assert!(d2 < 1e-12, "state-2 period violated: {d2:.3e}");
        }
    }

    #[test]
    fn closed_form_propagator_at_zero_time_is_identity() {
        let p = params(0.7, 4);
        let u = closed_form_propagator(&p, 0.0);
        assert!(frobenius_distance(&u, &identity(p.dim())) < 1e-14);
    }

    #[test]
    fn closed_form_gg_block_on_vacuum_is_one() {
        let p = params(0.7, 4);
        let u = closed_form_propagator(&p, 1.3);
        // ⟨gg,0|U|gg,0⟩ = 1 because a|0⟩ = 0
        assert!((u[[3, 3]] - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn closed_form_matches_eigendecomposition_exponential() {
        let p = params(0.7, 4);
        let gt = 1.3 / SQRT6;
        let u_closed = closed_form_propagator(&p, gt);
        let h = model::build_interaction_hamiltonian(&p);
        let u_eig = qops::unitary_propagator(&h, gt).unwrap();
        let dist = frobenius_distance(&u_closed, &u_eig);
        assert!(dist < 1e-10, "propagator routes disagree: {dist:.3e}");
    }

    #[test]
    fn closed_form_is_unitary_and_sector_preserving() {
        for n_max in [2, 3, 4, 7] {
            let p = params(0.31, n_max);
            let u = closed_form_propagator(&p, 2.17);
            let dist = frobenius_distance(&u.dot(&adjoint(&u)), &identity(p.dim()));
            assert!(dist < 1e-11, "n_max={n_max}: unitarity defect {dist:.3e}");
            for ((i, j), z) in u.indexed_iter() {
                if z.norm() > 1e-13 {
                    assert_eq!(
                        model::BasisIndex::from_flat(i).excitation(),
                        model::BasisIndex::from_flat(j).excitation()
                    );
                }
            }
        }
    }
}

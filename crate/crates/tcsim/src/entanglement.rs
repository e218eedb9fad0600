//! Wootters concurrence of a two-qubit density matrix.
//!
//! `C(ρ) = max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄)` where the λᵢ are the eigenvalues,
//! in decreasing order, of `ρ·ρ̃` with the spin-flipped state
//! `ρ̃ = (σʸ⊗σʸ) ρ* (σʸ⊗σʸ)` and `ρ*` the entrywise conjugate in the atomic
//! basis `{|ee⟩, |eg⟩, |ge⟩, |gg⟩}`.
//!
//! For X-shaped states (nonzeros only on the diagonal and anti-diagonal) the
//! closed form `2·max(0, |ρ₁₄| − √(ρ₂₂ρ₃₃), |ρ₂₃| − √(ρ₁₁ρ₄₄))` is provided
//! as a fast path.

use ndarray::Array2;
use ndarray_linalg::SVD;

use crate::error::{Error, Result};
use crate::evolution::DensityMatrix4;
use crate::qops;
use crate::{C64, CMatrix};

/// Off-pattern entries above this magnitude disqualify a matrix from the
/// X-state fast path.
const X_SHAPE_TOL: f64 = 1e-12;

/// The spin-flip conjugator `σʸ ⊗ σʸ` in the atomic basis: anti-diagonal
/// `(−1, 1, 1, −1)`.
fn spin_flip() -> CMatrix {
    let mut m: CMatrix = Array2::zeros((4, 4));
    m[[0, 3]] = C64::new(-1.0, 0.0);
    m[[1, 2]] = C64::new(1.0, 0.0);
    m[[2, 1]] = C64::new(1.0, 0.0);
    m[[3, 0]] = C64::new(-1.0, 0.0);
    m
}

/// Positive-semidefinite square root of a Hermitian matrix; eigenvalue
/// roundoff below zero is clipped.
fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let eig = qops::hermitian_eig(m)?;
    let mut scaled = eig.eigenvectors.clone();
    for (mut col, lambda) in scaled
        .columns_mut()
        .into_iter()
        .zip(eig.eigenvalues.iter())
    {
        let root = lambda.max(0.0).sqrt();
        col.mapv_inplace(|z| z * root);
    }
    Ok(scaled.dot(&qops::adjoint(&eig.eigenvectors)))
}

/// Wootters concurrence via the spectrum of `ρρ̃`.
///
/// The √λᵢ are evaluated as the singular values of `√ρ̃·√ρ`, whose Gram
/// matrix is similar to `ρρ̃`. Computing the square roots directly keeps
/// full precision when the spectrum is nearly degenerate at zero, where
/// taking √ of an eigensolver's λ ≈ 0 would amplify roundoff to ~1e-8.
pub fn concurrence(rho: &DensityMatrix4) -> Result<f64> {
    let m = rho.matrix();
    let yy = spin_flip();
    let sqrt_rho = psd_sqrt(m)?;
    // ρ̃ = Y ρ* Y, so √ρ̃ = Y (√ρ)* Y
    let sqrt_tilde = yy.dot(&sqrt_rho.mapv(|z| z.conj())).dot(&yy);
    let product = sqrt_tilde.dot(&sqrt_rho);
    let (_, singular, _) = product
        .svd(false, false)
        .map_err(|e| Error::InvalidDensityMatrix(format!("singular values failed: {e}")))?;
    // descending from LAPACK
    let c = singular[0] - singular[1] - singular[2] - singular[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Closed-form concurrence for X-shaped states.
///
/// Returns [`Error::NotXState`] when any entry off the diagonal and
/// anti-diagonal exceeds `1e-12` in magnitude.
pub fn concurrence_xstate(rho: &DensityMatrix4) -> Result<f64> {
    let m = rho.matrix();
    for ((i, j), z) in m.indexed_iter() {
        if i != j && i + j != 3 && z.norm() > X_SHAPE_TOL {
            return Err(Error::NotXState {
                row: i,
                col: j,
                magnitude: z.norm(),
            });
        }
    }
    let d = |i: usize| m[[i, i]].re.max(0.0);
    let branch_outer = m[[0, 3]].norm() - (d(1) * d(2)).sqrt();
    let branch_inner = m[[1, 2]].norm() - (d(0) * d(3)).sqrt();
    Ok((2.0 * branch_outer.max(branch_inner)).clamp(0.0, 1.0))
}

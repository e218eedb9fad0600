//! Dense complex linear-algebra kernels.
//!
//! Everything here is a pure function of its inputs; matrices are small
//! (dimension ≲ 64), so exact Hermitian eigendecomposition is used for
//! propagators instead of series methods.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};

use crate::error::{Error, Result};
use crate::{C64, CMatrix};

/// Tolerance for rejecting a non-Hermitian input.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are real and ascending; the columns of `eigenvectors` form a
/// unitary matrix, so `V·diag(λ)·V†` reconstructs the input.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Array1<f64>,
    pub eigenvectors: CMatrix,
}

/// Kronecker (tensor) product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[[i, j]];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[[i * br + k, j * bc + l]] = aij * b[[k, l]];
                }
            }
        }
    }
    out
}

/// Conjugate transpose.
pub fn adjoint(m: &CMatrix) -> CMatrix {
    m.t().mapv(|z| z.conj())
}

/// Frobenius norm.
pub fn frobenius_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Frobenius distance `‖a − b‖`.
pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    frobenius_norm(&(a - b))
}

/// Max-norm deviation from Hermiticity, `max |m - m†|`.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let adj = adjoint(m);
    (m - &adj)
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
}

/// True when every entry is finite (no NaN or infinity).
pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Identity matrix of dimension `n`.
pub fn identity(n: usize) -> CMatrix {
    Array2::eye(n).mapv(|x: f64| C64::new(x, 0.0))
}

fn check_square(m: &CMatrix) -> Result<usize> {
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::NonSquare { rows, cols });
    }
    Ok(rows)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as `(h + h†)/2` before decomposition to suppress
/// roundoff; inputs farther than [`HERMITICITY_TOL`] from Hermitian are
/// rejected.
pub fn hermitian_eig(h: &CMatrix) -> Result<HermitianEigen> {
    check_square(h)?;
    let deviation = hermiticity_deviation(h);
    if deviation > HERMITICITY_TOL {
        return Err(Error::NonHermitianInput {
            deviation,
            tol: HERMITICITY_TOL,
        });
    }
    let sym = (h + &adjoint(h)).mapv(|z| z * 0.5);
    let (eigenvalues, vectors) = sym
        .eigh(UPLO::Lower)
        .map_err(|e| Error::InvalidParams(format!("eigendecomposition failed: {e}")))?;
    // The LAPACK backend reads the row-major array as column-major, so the
    // returned columns diagonalize the transpose h^T = h*. Conjugating
    // restores eigenvectors of h; the reconstruction property test pins this.
    let eigenvectors = vectors.mapv(|z| z.conj());
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Unitary propagator `exp(−i·h·t)` of a Hermitian generator, built as
/// `V·diag(exp(−iλt))·V†`.
pub fn unitary_propagator(h: &CMatrix, t: f64) -> Result<CMatrix> {
    let eig = hermitian_eig(h)?;
    let phases: Array1<C64> = eig
        .eigenvalues
        .mapv(|lambda| (-C64::i() * lambda * t).exp());
    // V · diag(phases): scale the columns of V.
    let mut scaled = eig.eigenvectors.clone();
    for (mut col, phase) in scaled.columns_mut().into_iter().zip(phases.iter()) {
        col.mapv_inplace(|z| z * phase);
    }
    Ok(scaled.dot(&adjoint(&eig.eigenvectors)))
}

/// Trace out the field factor of a density matrix on atoms ⊗ field.
///
/// The flat basis index is `4·photons + atomic`, so the field is the slow
/// (outer) factor: `out[a,b] = Σ_n ρ[4n+a, 4n+b]`. The trace is preserved.
pub fn partial_trace_field(rho_full: &CMatrix, field_dim: usize) -> Result<CMatrix> {
    let n = check_square(rho_full)?;
    if field_dim == 0 || n != 4 * field_dim {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix of dimension 4*{field_dim}, got {n}"
        )));
    }
    let mut out: CMatrix = Array2::zeros((4, 4));
    for photons in 0..field_dim {
        for a in 0..4 {
            for b in 0..4 {
                out[[a, b]] += rho_full[[4 * photons + a, 4 * photons + b]];
            }
        }
    }
    Ok(out)
}

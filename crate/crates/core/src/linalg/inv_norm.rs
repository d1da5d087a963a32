use super::{dot, factorize, norm2, SparseSpdMatrix};
use crate::{AveError, Result};

pub const DEFAULT_NU_TOL: f64 = 1e-8;
pub const MAX_NU_SWEEPS: usize = 10_000;

/// `ν = ‖A⁻¹‖₂ = 1/λ_min(A)` for SPD `A`, by inverse power iteration.
///
/// Starts from the normalized all-ones vector. Each sweep applies `A⁻¹`
/// through one factor solve and takes `λ ≈ 1/(zᵀA⁻¹z)`; iteration stops once
/// that estimate moves by less than `tol` relatively.
pub fn estimate_inv_norm(a: &SparseSpdMatrix, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(AveError::Domain(format!(
            "inverse-norm tolerance must lie in (0, 1), got {tol}"
        )));
    }
    let n = a.n();
    if n == 0 {
        return Err(AveError::InvalidMatrix("empty matrix".into()));
    }
    let factor = factorize(a)?;
    let mut z = vec![1.0 / (n as f64).sqrt(); n];
    let mut w = vec![0.0; n];
    let mut lambda = f64::INFINITY;
    for _ in 0..MAX_NU_SWEEPS {
        factor.solve_into(&z, &mut w)?;
        let next = 1.0 / dot(&z, &w);
        let norm = norm2(&w);
        for (zi, wi) in z.iter_mut().zip(&w) {
            *zi = wi / norm;
        }
        if (next - lambda).abs() < tol * next {
            return Ok(1.0 / next);
        }
        lambda = next;
    }
    Err(AveError::ConvergenceFailure {
        sweeps: MAX_NU_SWEEPS,
    })
}

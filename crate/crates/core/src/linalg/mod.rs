//! Sparse SPD storage, envelope Cholesky, and `‖A⁻¹‖₂` estimation.

mod csr;
mod factor;
mod inv_norm;

pub use csr::{matvec, SparseSpdMatrix};
pub use factor::{factorize, solve_with_factor, FactorHandle};
pub use inv_norm::{estimate_inv_norm, DEFAULT_NU_TOL, MAX_NU_SWEEPS};

/// Euclidean norm.
pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn check_len(expected: usize, found: usize) -> crate::Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(crate::AveError::DimensionMismatch { expected, found })
    }
}

//! Test problems: the block-tridiagonal lattice family, Matrix Market
//! ingestion, and right-hand sides built from a designated solution.

mod lattice;
mod mtx;

pub use lattice::gen_lattice;
pub use mtx::{load_matrix_market, read_matrix_market, write_matrix_market};

use serde::{Deserialize, Serialize};

use crate::linalg::{check_len, matvec, SparseSpdMatrix};
use crate::Result;

/// An instance of `Ax - |x| = b`, optionally with its known solution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AveProblem {
    pub a: SparseSpdMatrix,
    pub b: Vec<f64>,
    pub x_star: Option<Vec<f64>>,
}

impl AveProblem {
    pub fn new(a: SparseSpdMatrix, b: Vec<f64>) -> Result<Self> {
        check_len(a.n(), b.len())?;
        Ok(Self { a, b, x_star: None })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }
}

/// `(-1, 1, -1, 1, …)` of length `n`.
pub fn alternating_xstar(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i % 2 == 0 { -1.0 } else { 1.0 })
        .collect()
}

/// Problem with `b = A·x* - |x*|`, recording `x*` as the known solution.
pub fn build_rhs(a: SparseSpdMatrix, x_star: Vec<f64>) -> Result<AveProblem> {
    let mut b = matvec(&a, &x_star)?;
    for (bi, xi) in b.iter_mut().zip(&x_star) {
        *bi -= xi.abs();
    }
    Ok(AveProblem {
        a,
        b,
        x_star: Some(x_star),
    })
}

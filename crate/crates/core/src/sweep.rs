//! Grid search for numerically optimal parameters, and convergence-domain
//! tables.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::FactorHandle;
use crate::params::{range_fpi_new, range_fpi_old, range_sor_new};
use crate::problems::AveProblem;
use crate::solvers::{solve, Method, SolveConfig};
use crate::{AveError, Result};

/// `[0.001, 0.002, …, 1.999]`.
pub fn default_grid() -> Vec<f64> {
    (1..2000).map(|k| k as f64 / 1000.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub method: Method,
    pub grid: Vec<f64>,
    /// Iteration count per grid point; `None` when the run did not converge
    /// within `k_max` or diverged.
    pub iterations: Vec<Option<usize>>,
    /// First grid point attaining `min_it`.
    pub best_param: f64,
    pub min_it: usize,
}

impl SweepResult {
    pub fn best_index(&self) -> usize {
        self.iterations
            .iter()
            .position(|&it| it == Some(self.min_it))
            .expect("best parameter is on the grid")
    }
}

/// Solves `problem` with `method` at every grid point, from the starting
/// vectors in `cfg` (zero by default), and picks the first parameter with
/// the fewest iterations. Grid points run in parallel; results keep grid
/// order.
pub fn grid_search(
    problem: &AveProblem,
    factor: &FactorHandle,
    method: Method,
    grid: &[f64],
    cfg: &SolveConfig,
) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(AveError::InvalidConfig("parameter grid is empty".into()));
    }
    let ascending = grid.windows(2).all(|w| w[0] < w[1]);
    if !ascending || grid[0].is_nan() || grid[0] <= 0.0 {
        return Err(AveError::InvalidConfig(
            "parameter grid must be positive and strictly ascending".into(),
        ));
    }
    let mut base = cfg.clone();
    base.capture_history = false;
    base.validate(problem.n())?;

    let iterations = grid
        .par_iter()
        .map(|&p| {
            let run = SolveConfig {
                parameter: p,
                ..base.clone()
            };
            match solve(problem, factor, method, &run) {
                Ok(r) if r.converged => Ok(Some(r.iterations)),
                Ok(_) | Err(AveError::Divergence { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let (best, min_it) = iterations
        .iter()
        .enumerate()
        .filter_map(|(i, it)| it.map(|it| (i, it)))
        .min_by_key(|&(i, it)| (it, i))
        .ok_or(AveError::NoConvergentParameter)?;

    Ok(SweepResult {
        method,
        grid: grid.to_vec(),
        iterations,
        best_param: grid[best],
        min_it,
    })
}

/// Convergence-domain endpoints at one `ν`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainRow {
    pub nu: f64,
    pub sor_new_hi: f64,
    pub fpi_new_hi: f64,
    pub fpi_old_lo: f64,
    pub fpi_old_hi: f64,
    pub fpi_old_empty: bool,
}

pub fn domain_curves(nu_grid: &[f64]) -> Result<Vec<DomainRow>> {
    nu_grid
        .iter()
        .map(|&nu| {
            let old = range_fpi_old(nu)?;
            Ok(DomainRow {
                nu,
                sor_new_hi: range_sor_new(nu)?.upper,
                fpi_new_hi: range_fpi_new(nu)?.upper,
                fpi_old_lo: old.lower,
                fpi_old_hi: old.upper,
                fpi_old_empty: old.is_empty(),
            })
        })
        .collect()
}

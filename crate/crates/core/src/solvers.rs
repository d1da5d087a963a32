//! The SOR-like iteration and the fixed-point iteration (FPI).
//!
//! Both act on the equivalent two-block system `Ax - y = b`, `y = |x|`:
//!
//! ```text
//! SOR-like:  x ← (1-ω)x + ωA⁻¹(y + b),   y ← (1-ω)y + ω|x|
//! FPI:       x ← A⁻¹(y + b),             y ← (1-τ)y + τ|x|
//! ```
//!
//! With `ω = τ = 1` both collapse to `x ← A⁻¹(y + b)`, `y ← |x|` and produce
//! identical iterates.

use serde::{Deserialize, Serialize};

use crate::linalg::{check_len, norm2, FactorHandle};
use crate::problems::AveProblem;
use crate::{AveError, Result};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_K_MAX: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// SOR-like iteration, parameter `ω`.
    Sor,
    /// Fixed-point iteration, parameter `τ`.
    Fpi,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Sor => "sor",
            Method::Fpi => "fpi",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = AveError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sor" => Ok(Method::Sor),
            "fpi" => Ok(Method::Fpi),
            other => Err(AveError::InvalidConfig(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    /// `ω` for SOR-like, `τ` for FPI.
    pub parameter: f64,
    /// Stop once the relative residual is at or below this.
    pub tol: f64,
    pub k_max: usize,
    /// Initial `x`; zero when absent.
    pub x0: Option<Vec<f64>>,
    /// Initial `y`; zero when absent.
    pub y0: Option<Vec<f64>>,
    pub capture_history: bool,
}

impl SolveConfig {
    pub fn new(parameter: f64) -> Self {
        Self {
            parameter,
            tol: DEFAULT_TOL,
            k_max: DEFAULT_K_MAX,
            x0: None,
            y0: None,
            capture_history: false,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_k_max(mut self, k_max: usize) -> Self {
        self.k_max = k_max;
        self
    }

    pub fn with_start(mut self, x0: Vec<f64>, y0: Vec<f64>) -> Self {
        self.x0 = Some(x0);
        self.y0 = Some(y0);
        self
    }

    pub fn with_history(mut self, capture: bool) -> Self {
        self.capture_history = capture;
        self
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if !(self.parameter > 0.0 && self.parameter.is_finite()) {
            return Err(AveError::InvalidConfig(format!(
                "parameter must be positive, got {}",
                self.parameter
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(AveError::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.k_max == 0 {
            return Err(AveError::InvalidConfig("k_max must be at least 1".into()));
        }
        for v in [&self.x0, &self.y0].into_iter().flatten() {
            check_len(n, v.len())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub method: Method,
    pub parameter: f64,
    pub converged: bool,
    /// Full `(x, y)` updates executed.
    pub iterations: usize,
    pub final_res: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Entry `k` is the residual after iteration `k + 1`.
    pub res_history: Vec<f64>,
    /// `(x⁽ᵏ⁾, y⁽ᵏ⁾)` for `k = 0..=iterations`, starting pair included.
    pub iterate_history: Option<Vec<(Vec<f64>, Vec<f64>)>>,
}

/// `‖Ax - |x| - b‖₂ / ‖b‖₂`.
pub fn residual(problem: &AveProblem, x: &[f64]) -> Result<f64> {
    let bnorm = norm2(&problem.b);
    if bnorm == 0.0 {
        return Err(AveError::Domain(
            "relative residual is undefined for b = 0".into(),
        ));
    }
    let mut ax = vec![0.0; problem.n()];
    Ok(residual_with(problem, x, &mut ax)? / bnorm)
}

/// Unscaled `‖Ax - |x| - b‖₂`, reusing `scratch` for `Ax`.
fn residual_with(problem: &AveProblem, x: &[f64], scratch: &mut [f64]) -> Result<f64> {
    problem.a.matvec_into(x, scratch)?;
    Ok(scratch
        .iter()
        .zip(x)
        .zip(&problem.b)
        .map(|((ax, xi), bi)| {
            let r = ax - xi.abs() - bi;
            r * r
        })
        .sum::<f64>()
        .sqrt())
}

pub fn solve_sor_like(
    problem: &AveProblem,
    factor: &FactorHandle,
    cfg: &SolveConfig,
) -> Result<SolveReport> {
    solve(problem, factor, Method::Sor, cfg)
}

pub fn solve_fpi(
    problem: &AveProblem,
    factor: &FactorHandle,
    cfg: &SolveConfig,
) -> Result<SolveReport> {
    solve(problem, factor, Method::Fpi, cfg)
}

/// Runs `method` until the relative residual reaches `cfg.tol` or `cfg.k_max`
/// iterations have been spent. One factor solve per iteration.
pub fn solve(
    problem: &AveProblem,
    factor: &FactorHandle,
    method: Method,
    cfg: &SolveConfig,
) -> Result<SolveReport> {
    let n = problem.n();
    check_len(n, factor.n())?;
    cfg.validate(n)?;
    let bnorm = norm2(&problem.b);
    if bnorm == 0.0 {
        return Err(AveError::Domain(
            "relative residual is undefined for b = 0".into(),
        ));
    }

    let p = cfg.parameter;
    let q = 1.0 - p;
    let mut x = cfg.x0.clone().unwrap_or_else(|| vec![0.0; n]);
    let mut y = cfg.y0.clone().unwrap_or_else(|| vec![0.0; n]);
    let mut rhs = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut scratch = vec![0.0; n];

    let mut res_history = Vec::new();
    let mut iterate_history = cfg
        .capture_history
        .then(|| vec![(x.clone(), y.clone())]);
    let mut converged = false;
    let mut final_res = f64::NAN;

    for k in 1..=cfg.k_max {
        for ((r, yi), bi) in rhs.iter_mut().zip(&y).zip(&problem.b) {
            *r = yi + bi;
        }
        factor.solve_into(&rhs, &mut z)?;
        match method {
            Method::Sor => {
                for (xi, zi) in x.iter_mut().zip(&z) {
                    *xi = q * *xi + p * zi;
                }
            }
            Method::Fpi => x.copy_from_slice(&z),
        }
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi = q * *yi + p * xi.abs();
        }

        let res = residual_with(problem, &x, &mut scratch)? / bnorm;
        if !res.is_finite() || x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(AveError::Divergence { iteration: k });
        }
        res_history.push(res);
        if let Some(h) = iterate_history.as_mut() {
            h.push((x.clone(), y.clone()));
        }
        final_res = res;
        if res <= cfg.tol {
            converged = true;
            break;
        }
    }

    Ok(SolveReport {
        method,
        parameter: p,
        converged,
        iterations: res_history.len(),
        final_res,
        x,
        y,
        res_history,
        iterate_history,
    })
}

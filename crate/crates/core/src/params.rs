//! Closed-form parameter theory for the SOR-like iteration and FPI.
//!
//! Everything here is a scalar function of `ν = ‖A⁻¹‖₂` and the iteration
//! parameter (`ω` for SOR-like, `τ` for FPI). Successive iterate differences
//! of SOR-like are bounded componentwise by
//!
//! ```text
//! W = [ |1-ω|      ων         ]
//!     [ ω|1-ω|     ω²ν + |1-ω| ]
//! ```
//!
//! and those of FPI by `U = [[0, ν], [0, τν + |1-τ|]]`. The ranges below are
//! exactly the parameter sets where `ρ(W) < 1` and `ρ(U) < 1`; both spectral
//! radii are minimized at parameter 1, where they equal `ν`.

use serde::{Deserialize, Serialize};

use crate::{AveError, Result};

/// Bisection tolerance used for [`chen_opt_omega`] unless overridden.
pub const DEFAULT_CHEN_TOL: f64 = 1e-10;

/// Bracket searched for the root of the prior-work optimality condition.
/// The endpoints stay off 0 and 1 where the expression degenerates.
pub const CHEN_BRACKET: (f64, f64) = (1e-8, 1.0 - 1e-8);

/// Open interval `(lower, upper)`, or the empty set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub lower: f64,
    pub upper: f64,
    pub empty: bool,
}

impl ParamRange {
    pub fn open(lower: f64, upper: f64) -> Self {
        debug_assert!(lower < upper);
        Self {
            lower,
            upper,
            empty: false,
        }
    }

    pub fn empty() -> Self {
        Self {
            lower: f64::NAN,
            upper: f64::NAN,
            empty: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn contains(&self, p: f64) -> bool {
        !self.empty && self.lower < p && p < self.upper
    }

    /// `self ⊆ other`. The empty range is a subset of everything.
    pub fn is_subset_of(&self, other: &ParamRange) -> bool {
        self.empty || (!other.empty && other.lower <= self.lower && self.upper <= other.upper)
    }
}

fn check_nu(nu: f64) -> Result<()> {
    if nu > 0.0 && nu < 1.0 {
        Ok(())
    } else {
        Err(AveError::Domain(format!(
            "nu = ‖A⁻¹‖₂ must lie in (0, 1) for the convergence theory, got {nu}"
        )))
    }
}

/// SOR-like range `(0, (2 - 2√ν)/(1 - ν))`.
pub fn range_sor_new(nu: f64) -> Result<ParamRange> {
    check_nu(nu)?;
    Ok(ParamRange::open(0.0, (2.0 - 2.0 * nu.sqrt()) / (1.0 - nu)))
}

/// FPI range `(0, 2/(ν + 1))`.
pub fn range_fpi_new(nu: f64) -> Result<ParamRange> {
    check_nu(nu)?;
    Ok(ParamRange::open(0.0, 2.0 / (nu + 1.0)))
}

/// Legacy FPI range, nonempty only for `ν < √2/2`.
pub fn range_fpi_old(nu: f64) -> Result<ParamRange> {
    check_nu(nu)?;
    if nu >= std::f64::consts::FRAC_1_SQRT_2 {
        return Ok(ParamRange::empty());
    }
    let s = (1.0 - nu * nu).sqrt();
    Ok(ParamRange::open((1.0 - s) / (1.0 - nu), (1.0 + s) / (1.0 + nu)))
}

/// Legacy sufficient condition for SOR-like convergence:
/// `0 < ω < 2` and `a⁴ - 3a² - 2ad - 2d² + 1 > 0` with `a = |1-ω|`, `d = ω²ν`.
pub fn check_kema_condition(omega: f64, nu: f64) -> bool {
    if !(omega > 0.0 && omega < 2.0) {
        return false;
    }
    let a = (1.0 - omega).abs();
    let d = omega * omega * nu;
    a.powi(4) - 3.0 * a * a - 2.0 * a * d - 2.0 * d * d + 1.0 > 0.0
}

/// `g_ν(ω) = 2|1-ω| + ω²ν + ω√(4|1-ω|ν + ω²ν²)`, twice the spectral radius of `W`.
pub fn g_nu_sor(omega: f64, nu: f64) -> f64 {
    let a = (1.0 - omega).abs();
    2.0 * a + omega * omega * nu + omega * (4.0 * a * nu + omega * omega * nu * nu).sqrt()
}

/// Spectral radius of `W`.
pub fn rho_w(omega: f64, nu: f64) -> f64 {
    0.5 * g_nu_sor(omega, nu)
}

/// Spectral radius of the upper-triangular `U`: `τν + |1-τ|`.
pub fn rho_u(tau: f64, nu: f64) -> f64 {
    tau * nu + (1.0 - tau).abs()
}

/// Minimizer of `ρ(W)` over the SOR-like range. Always 1.
pub fn optimal_sor(nu: f64) -> Result<f64> {
    check_nu(nu)?;
    Ok(1.0)
}

/// Minimizer of `ρ(U)` over the FPI range. Always 1.
pub fn optimal_fpi(nu: f64) -> Result<f64> {
    check_nu(nu)?;
    Ok(1.0)
}

/// Derivative condition whose root in `(0, 1)` is the prior-work optimal
/// `ω` (the minimizer of `‖T_ν(ω)‖` in an `ω`-weighted norm).
pub fn chen_g1(omega: f64, nu: f64) -> f64 {
    let w = omega;
    let p = 6.0 * (w - 1.0) + 8.0 * nu * nu * w.powi(3) + 2.0 * nu * (2.0 * w - 3.0 * w * w);
    let q = 3.0 * (w - 1.0).powi(2) + 2.0 * nu * nu * w.powi(4) + 2.0 * nu * w * w * (1.0 - w);
    let num = q * p - 8.0 * (w - 1.0).powi(3);
    let den = (q * q - 4.0 * (w - 1.0).powi(4)).sqrt();
    p + num / den
}

/// Prior-work optimal `ω`: exactly 1 for `ν ≤ 1/4`, otherwise the root of
/// [`chen_g1`] on [`CHEN_BRACKET`] found by bisection to absolute `tol`.
pub fn chen_opt_omega(nu: f64, tol: f64) -> Result<f64> {
    check_nu(nu)?;
    if !(tol > 0.0 && tol <= 1e-4) {
        return Err(AveError::Domain(format!(
            "bisection tolerance must lie in (0, 1e-4], got {tol}"
        )));
    }
    if nu <= 0.25 {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = CHEN_BRACKET;
    let f_lo = chen_g1(lo, nu);
    let f_hi = chen_g1(hi, nu);
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return Err(AveError::BracketFailure { lo, hi, f_lo, f_hi });
    }
    let lo_sign = f_lo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = chen_g1(mid, nu);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `ν` together with every range and optimal parameter derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamEnvelope {
    pub nu: f64,
    pub range_sor_new: ParamRange,
    pub range_fpi_new: ParamRange,
    pub range_fpi_old: ParamRange,
    pub omega_nopt: f64,
    pub tau_opt: f64,
    pub omega_chen_opt: f64,
}

impl ParamEnvelope {
    pub fn new(nu: f64) -> Result<Self> {
        Self::with_tol(nu, DEFAULT_CHEN_TOL)
    }

    pub fn with_tol(nu: f64, chen_tol: f64) -> Result<Self> {
        Ok(Self {
            nu,
            range_sor_new: range_sor_new(nu)?,
            range_fpi_new: range_fpi_new(nu)?,
            range_fpi_old: range_fpi_old(nu)?,
            omega_nopt: optimal_sor(nu)?,
            tau_opt: optimal_fpi(nu)?,
            omega_chen_opt: chen_opt_omega(nu, chen_tol)?,
        })
    }
}

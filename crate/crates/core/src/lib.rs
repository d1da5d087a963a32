//! Iterative solvers for absolute value equations `Ax - |x| = b`.
//!
//! The crate provides the SOR-like iteration and the fixed-point iteration
//! (FPI) on sparse symmetric positive-definite `A`, the closed-form parameter
//! theory that bounds them (convergence ranges, spectral radii of the
//! iteration-bounding 2x2 matrices, optimal parameters), test-problem
//! generators, Matrix Market ingestion, and grid-search sweeps.
//!
//! ```
//! use ave_core::{gen_lattice, factorize, solve_sor_like, SolveConfig};
//!
//! let problem = gen_lattice(8);
//! let factor = factorize(&problem.a).unwrap();
//! let report = solve_sor_like(&problem, &factor, &SolveConfig::new(1.0)).unwrap();
//! assert!(report.converged);
//! assert_eq!(report.iterations, 11);
//! ```

pub mod error;
pub mod linalg;
pub mod params;
pub mod problems;
pub mod solvers;
pub mod sweep;

pub use error::{AveError, Result};
pub use linalg::{
    estimate_inv_norm, factorize, matvec, solve_with_factor, FactorHandle, SparseSpdMatrix,
    DEFAULT_NU_TOL,
};
pub use params::{
    chen_opt_omega, check_kema_condition, g_nu_sor, optimal_fpi, optimal_sor, range_fpi_new,
    range_fpi_old, range_sor_new, rho_u, rho_w, ParamEnvelope, ParamRange,
};
pub use problems::{
    alternating_xstar, build_rhs, gen_lattice, load_matrix_market, write_matrix_market,
    AveProblem,
};
pub use solvers::{residual, solve, solve_fpi, solve_sor_like, Method, SolveConfig, SolveReport};
pub use sweep::{default_grid, domain_curves, grid_search, DomainRow, SweepResult};

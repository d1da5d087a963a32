//! Shared fixtures for the criterion benchmarks.

use ave_core::{factorize, gen_lattice, AveProblem, FactorHandle};

/// Lattice sizes exercised by the benchmarks.
pub const LATTICE_SIZES: [usize; 3] = [8, 16, 32];

/// A lattice problem with its factor, built once per benchmark group.
pub fn lattice_fixture(m: usize) -> (AveProblem, FactorHandle) {
    let problem = gen_lattice(m);
    let factor = factorize(&problem.a).expect("lattice matrices are SPD");
    (problem, factor)
}

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use ave_core::{alternating_xstar, build_rhs, gen_lattice, load_matrix_market, AveProblem};

use crate::ProblemArgs;

/// A named problem ready to solve.
pub struct NamedProblem {
    pub name: String,
    pub problem: AveProblem,
}

pub fn lattice(m: usize) -> Result<NamedProblem> {
    anyhow::ensure!(m >= 1, "lattice size must be at least 1");
    Ok(NamedProblem {
        name: format!("lattice{m}"),
        problem: gen_lattice(m),
    })
}

pub fn matrix_file(path: &Path) -> Result<NamedProblem> {
    let a = load_matrix_market(path).with_context(|| format!("loading {}", path.display()))?;
    let n = a.n();
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(NamedProblem {
        name,
        problem: build_rhs(a, alternating_xstar(n))?,
    })
}

pub fn resolve(args: &ProblemArgs) -> Result<NamedProblem> {
    match (&args.lattice, &args.matrix) {
        (Some(m), None) => lattice(*m),
        (None, Some(path)) => matrix_file(path),
        _ => anyhow::bail!("exactly one of --lattice or --matrix is required"),
    }
}

/// `<dir>/<name>.mtx` or `<dir>/<name>/<name>.mtx`, whichever exists.
pub fn find_in_dir(dir: &Path, name: &str) -> Option<PathBuf> {
    [
        dir.join(format!("{name}.mtx")),
        dir.join(name).join(format!("{name}.mtx")),
    ]
    .into_iter()
    .find(|p| p.is_file())
}

//! `ave`: solve absolute value equations, sweep parameters, and reproduce
//! the parameter and iteration tables.

mod commands;
mod render;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ave", version, about = "SOR-like and FPI solvers for Ax - |x| = b")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one solve and report IT, CPU and RES.
    Solve(SolveArgs),
    /// Grid-search the iteration parameter for the fewest iterations.
    Sweep(SweepArgs),
    /// Report ν and every derived range and optimal parameter.
    Ranges(RangesArgs),
    /// Run the method comparison table over a list of problems.
    Bench(BenchArgs),
    /// Emit convergence-domain endpoints over ν = 0.01..0.99.
    Curves(OutputArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct ProblemArgs {
    /// Lattice problem of size m (n = m²).
    #[arg(long)]
    lattice: Option<usize>,
    /// Matrix Market file; b is built from x* = (-1, 1, -1, …).
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct StopArgs {
    /// Relative residual threshold.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Maximum number of iterations.
    #[arg(long = "kmax", default_value_t = 100)]
    k_max: usize,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Sor,
    Fpi,
}

impl From<MethodArg> for ave_core::Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Sor => ave_core::Method::Sor,
            MethodArg::Fpi => ave_core::Method::Fpi,
        }
    }
}

/// `--param` value: a number, `optimal`, or `grid`.
#[derive(Clone, Copy, Debug, PartialEq)]
enum ParamChoice {
    Value(f64),
    Optimal,
    Grid,
}

impl std::str::FromStr for ParamChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "optimal" => Ok(ParamChoice::Optimal),
            "grid" => Ok(ParamChoice::Grid),
            _ => s
                .parse::<f64>()
                .map(ParamChoice::Value)
                .map_err(|_| format!("expected a number, `optimal` or `grid`, got `{s}`")),
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Sor)]
    method: MethodArg,
    #[arg(long, default_value = "optimal")]
    param: ParamChoice,
    #[command(flatten)]
    stop: StopArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Sor)]
    method: MethodArg,
    #[command(flatten)]
    stop: StopArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct RangesArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Lattice sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    lattice: Vec<usize>,
    /// Collection problem names resolved as <matrix-dir>/<name>.mtx.
    #[arg(long, value_delimiter = ',')]
    problems: Vec<String>,
    /// Matrix Market files to include directly.
    #[arg(long)]
    matrix: Vec<PathBuf>,
    /// Directory holding collection matrices.
    #[arg(long, env = "AVE_MATRIX_DIR")]
    matrix_dir: Option<PathBuf>,
    /// Timed repetitions per row; CPU is their mean.
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[command(flatten)]
    stop: StopArgs,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    // usage errors exit 1; 2 is reserved for non-convergence
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Ranges(args) => commands::ranges(args),
        Command::Bench(args) => commands::bench(args),
        Command::Curves(args) => commands::curves(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use ave_core::{
    chen_opt_omega, default_grid, domain_curves, estimate_inv_norm, factorize, grid_search,
    optimal_fpi, optimal_sor, solve as run, AveError, AveProblem, FactorHandle, Method,
    ParamEnvelope, ParamRange, SolveConfig, DEFAULT_NU_TOL,
};
use serde::Serialize;

use crate::render::{emit, exact, fixed4, sci, Table, NOT_CONVERGED};
use crate::source::{self, NamedProblem};
use crate::{BenchArgs, OutputArgs, ParamChoice, RangesArgs, SolveArgs, StopArgs, SweepArgs};

const CHEN_TOL: f64 = 1e-10;

fn config(stop: &StopArgs, parameter: f64) -> SolveConfig {
    SolveConfig::new(parameter)
        .with_tol(stop.tol)
        .with_k_max(stop.k_max)
}

/// One timed run. Divergence counts as non-convergence, not as an error.
#[derive(Debug, Clone, Serialize)]
struct Run {
    method: Method,
    parameter: f64,
    converged: bool,
    iterations: Option<usize>,
    cpu_seconds: f64,
    res: Option<f64>,
}

impl Run {
    fn cells(&self, text: bool) -> [String; 3] {
        if !self.converged {
            return [NOT_CONVERGED.into(), NOT_CONVERGED.into(), NOT_CONVERGED.into()];
        }
        let it = self.iterations.expect("converged run has a count").to_string();
        let res = self.res.expect("converged run has a residual");
        if text {
            [it, sci(self.cpu_seconds), sci(res)]
        } else {
            [it, exact(self.cpu_seconds), exact(res)]
        }
    }
}

/// Solves `repeats` times and reports the mean time of the iteration loop.
fn timed(
    problem: &AveProblem,
    factor: &FactorHandle,
    method: Method,
    cfg: &SolveConfig,
    repeats: usize,
) -> Result<Run> {
    let mut total = Duration::ZERO;
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let outcome = run(problem, factor, method, cfg);
        total += start.elapsed();
        last = Some(outcome);
    }
    let cpu_seconds = total.as_secs_f64() / repeats.max(1) as f64;
    match last.expect("at least one repeat") {
        Ok(r) => Ok(Run {
            method,
            parameter: cfg.parameter,
            converged: r.converged,
            iterations: r.converged.then_some(r.iterations),
            cpu_seconds,
            res: Some(r.final_res),
        }),
        Err(AveError::Divergence { .. }) => Ok(Run {
            method,
            parameter: cfg.parameter,
            converged: false,
            iterations: None,
            cpu_seconds,
            res: None,
        }),
        Err(e) => Err(e.into()),
    }
}

fn nu_of(problem: &AveProblem) -> Result<f64> {
    estimate_inv_norm(&problem.a, DEFAULT_NU_TOL).context("estimating ν = ‖A⁻¹‖₂")
}

fn factor_of(named: &NamedProblem) -> Result<FactorHandle> {
    factorize(&named.problem.a).with_context(|| format!("factorizing {}", named.name))
}

fn status(converged: bool) -> ExitCode {
    if converged {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

pub fn solve(args: SolveArgs) -> Result<ExitCode> {
    let named = source::resolve(&args.problem)?;
    let factor = factor_of(&named)?;
    let method = Method::from(args.method);
    let parameter = match args.param {
        ParamChoice::Value(p) => p,
        ParamChoice::Optimal => {
            let nu = nu_of(&named.problem)?;
            match method {
                Method::Sor => optimal_sor(nu)?,
                Method::Fpi => optimal_fpi(nu)?,
            }
        }
        ParamChoice::Grid => {
            let cfg = config(&args.stop, 1.0);
            match grid_search(&named.problem, &factor, method, &default_grid(), &cfg) {
                Ok(sweep) => sweep.best_param,
                Err(AveError::NoConvergentParameter) => {
                    eprintln!("no grid parameter converged within {} iterations", args.stop.k_max);
                    return Ok(ExitCode::from(2));
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    let result = timed(&named.problem, &factor, method, &config(&args.stop, parameter), 1)?;

    let mut table = Table::new(&["problem", "method", "param", "IT", "CPU", "RES"]);
    let [it, cpu, res] = result.cells(true);
    table.push(vec![named.name.clone(), method.to_string(), fixed4(parameter), it, cpu, res]);
    let text = table.to_text();

    let mut csv = Table::new(&["problem", "method", "param", "IT", "CPU", "RES"]);
    let [it, cpu, res] = result.cells(false);
    csv.push(vec![named.name.clone(), method.to_string(), exact(parameter), it, cpu, res]);

    #[derive(Serialize)]
    struct Out<'a> {
        problem: &'a str,
        #[serde(flatten)]
        run: &'a Run,
    }
    emit(
        &args.output,
        &text,
        &csv,
        &Out {
            problem: &named.name,
            run: &result,
        },
    )?;
    Ok(status(result.converged))
}

pub fn sweep(args: SweepArgs) -> Result<ExitCode> {
    let named = source::resolve(&args.problem)?;
    let factor = factor_of(&named)?;
    let method = Method::from(args.method);
    let cfg = config(&args.stop, 1.0);
    let result = match grid_search(&named.problem, &factor, method, &default_grid(), &cfg) {
        Ok(r) => r,
        Err(AveError::NoConvergentParameter) => {
            eprintln!("no grid parameter converged within {} iterations", args.stop.k_max);
            return Ok(ExitCode::from(2));
        }
        Err(e) => return Err(e.into()),
    };

    let converged = result.iterations.iter().filter(|it| it.is_some()).count();
    let mut summary = Table::new(&["problem", "method", "best_param", "min_IT", "converged_points"]);
    summary.push(vec![
        named.name.clone(),
        method.to_string(),
        fixed4(result.best_param),
        result.min_it.to_string(),
        format!("{converged}/{}", result.grid.len()),
    ]);

    let mut csv = Table::new(&["param", "IT"]);
    for (p, it) in result.grid.iter().zip(&result.iterations) {
        csv.push(vec![
            exact(*p),
            it.map_or_else(|| NOT_CONVERGED.to_owned(), |k| k.to_string()),
        ]);
    }
    emit(&args.output, &summary.to_text(), &csv, &result)?;
    Ok(ExitCode::SUCCESS)
}

fn range_text(r: &ParamRange) -> String {
    if r.is_empty() {
        "∅".to_owned()
    } else {
        format!("({}, {})", fixed4(r.lower), fixed4(r.upper))
    }
}

pub fn ranges(args: RangesArgs) -> Result<ExitCode> {
    let named = source::resolve(&args.problem)?;
    let nu = nu_of(&named.problem)?;
    let env = ParamEnvelope::with_tol(nu, CHEN_TOL)?;

    let mut text = Table::new(&["quantity", "value"]);
    for (k, v) in [
        ("problem", named.name.clone()),
        ("nu", fixed4(env.nu)),
        ("Range2 (SOR)", range_text(&env.range_sor_new)),
        ("Range3 (FPI, earlier)", range_text(&env.range_fpi_old)),
        ("Range4 (FPI)", range_text(&env.range_fpi_new)),
        ("omega_chen_opt", fixed4(env.omega_chen_opt)),
        ("omega_nopt", fixed4(env.omega_nopt)),
        ("tau_opt", fixed4(env.tau_opt)),
    ] {
        text.push(vec![k.to_owned(), v]);
    }

    let mut csv = Table::new(&[
        "nu",
        "range2_lo",
        "range2_hi",
        "range3_lo",
        "range3_hi",
        "range3_empty",
        "range4_lo",
        "range4_hi",
        "omega_chen_opt",
        "omega_nopt",
        "tau_opt",
    ]);
    csv.push(vec![
        exact(env.nu),
        exact(env.range_sor_new.lower),
        exact(env.range_sor_new.upper),
        exact(env.range_fpi_old.lower),
        exact(env.range_fpi_old.upper),
        env.range_fpi_old.is_empty().to_string(),
        exact(env.range_fpi_new.lower),
        exact(env.range_fpi_new.upper),
        exact(env.omega_chen_opt),
        exact(env.omega_nopt),
        exact(env.tau_opt),
    ]);
    emit(&args.output, &text.to_text(), &csv, &env)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Serialize)]
struct BenchRow {
    problem: String,
    n: usize,
    nu: f64,
    label: &'static str,
    #[serde(flatten)]
    run: Run,
}

fn bench_problems(args: &BenchArgs) -> Result<Vec<NamedProblem>> {
    let mut out = Vec::new();
    for &m in &args.lattice {
        out.push(source::lattice(m)?);
    }
    for name in &args.problems {
        let Some(dir) = &args.matrix_dir else {
            eprintln!("skipping {name}: no --matrix-dir or AVE_MATRIX_DIR given");
            continue;
        };
        match source::find_in_dir(dir, name) {
            Some(path) => out.push(source::matrix_file(&path)?),
            None => eprintln!("skipping {name}: not found under {}", dir.display()),
        }
    }
    for path in &args.matrix {
        if path.is_file() {
            out.push(source::matrix_file(path)?);
        } else {
            eprintln!("skipping {}: file not found", path.display());
        }
    }
    Ok(out)
}

fn grid_run(
    problem: &AveProblem,
    factor: &FactorHandle,
    method: Method,
    stop: &StopArgs,
    repeats: usize,
) -> Result<Run> {
    let cfg = config(stop, 1.0);
    match grid_search(problem, factor, method, &default_grid(), &cfg) {
        Ok(sweep) => timed(problem, factor, method, &config(stop, sweep.best_param), repeats),
        Err(AveError::NoConvergentParameter) => Ok(Run {
            method,
            parameter: f64::NAN,
            converged: false,
            iterations: None,
            cpu_seconds: f64::NAN,
            res: None,
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn bench(args: BenchArgs) -> Result<ExitCode> {
    anyhow::ensure!(args.repeats >= 1, "--repeats must be at least 1");
    let problems = bench_problems(&args)?;

    let mut rows = Vec::new();
    for named in &problems {
        let p = &named.problem;
        let factor = factor_of(named)?;
        let nu = nu_of(p)?;
        let r = args.repeats;
        let chen = chen_opt_omega(nu, CHEN_TOL)
            .with_context(|| format!("optimal ω for {} (ν = {nu})", named.name))?;
        let runs = [
            ("SOR(chen_opt)", timed(p, &factor, Method::Sor, &config(&args.stop, chen), r)?),
            ("SOR(1)", timed(p, &factor, Method::Sor, &config(&args.stop, 1.0), r)?),
            ("SOR(grid)", grid_run(p, &factor, Method::Sor, &args.stop, r)?),
            ("FPI(1)", timed(p, &factor, Method::Fpi, &config(&args.stop, 1.0), r)?),
            ("FPI(grid)", grid_run(p, &factor, Method::Fpi, &args.stop, r)?),
        ];
        for (label, run) in runs {
            rows.push(BenchRow {
                problem: named.name.clone(),
                n: p.n(),
                nu,
                label,
                run,
            });
        }
    }

    let headers = ["problem", "n", "nu", "method", "param", "IT", "CPU", "RES"];
    let mut text = Table::new(&headers);
    let mut csv = Table::new(&headers);
    for row in &rows {
        let param = |f: fn(f64) -> String| {
            if row.run.parameter.is_nan() {
                NOT_CONVERGED.to_owned()
            } else {
                f(row.run.parameter)
            }
        };
        let [it, cpu, res] = row.run.cells(true);
        text.push(vec![
            row.problem.clone(),
            row.n.to_string(),
            fixed4(row.nu),
            row.label.to_owned(),
            param(fixed4),
            it,
            cpu,
            res,
        ]);
        let [it, cpu, res] = row.run.cells(false);
        csv.push(vec![
            row.problem.clone(),
            row.n.to_string(),
            exact(row.nu),
            row.label.to_owned(),
            param(exact),
            it,
            cpu,
            res,
        ]);
    }
    emit(&args.output, &text.to_text(), &csv, &rows)?;
    Ok(ExitCode::SUCCESS)
}

pub fn curves(out: OutputArgs) -> Result<ExitCode> {
    let nus: Vec<f64> = (1..100).map(|k| k as f64 / 100.0).collect();
    let rows = domain_curves(&nus)?;

    let headers = ["nu", "sor_new_hi", "fpi_new_hi", "fpi_old_lo", "fpi_old_hi", "fpi_old_empty"];
    let mut text = Table::new(&headers);
    let mut csv = Table::new(&headers);
    for r in &rows {
        let old = |v: f64, f: fn(f64) -> String| if r.fpi_old_empty { String::new() } else { f(v) };
        text.push(vec![
            format!("{:.2}", r.nu),
            fixed4(r.sor_new_hi),
            fixed4(r.fpi_new_hi),
            old(r.fpi_old_lo, fixed4),
            old(r.fpi_old_hi, fixed4),
            r.fpi_old_empty.to_string(),
        ]);
        csv.push(vec![
            exact(r.nu),
            exact(r.sor_new_hi),
            exact(r.fpi_new_hi),
            old(r.fpi_old_lo, exact),
            old(r.fpi_old_hi, exact),
            r.fpi_old_empty.to_string(),
        ]);
    }
    emit(&out, &text.to_text(), &csv, &rows)?;
    Ok(ExitCode::SUCCESS)
}

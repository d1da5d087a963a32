mod common;

use ave_core::{
    build_rhs, estimate_inv_norm, factorize, gen_lattice, range_fpi_new, range_sor_new, residual,
    rho_u, rho_w, solve, solve_fpi, solve_sor_like, AveProblem, Method, SolveConfig,
    SolveReport, DEFAULT_NU_TOL,
};
use common::*;

fn test_problems() -> Vec<(String, AveProblem)> {
    let mut out: Vec<_> = (1..=10)
        .map(|m| (format!("lattice{m}"), gen_lattice(m)))
        .collect();
    let mut r = rng(42);
    for k in 0..5 {
        let n = 10 + 7 * k;
        // shift n keeps λ_min ≥ n > 1, so ν < 1
        let a = random_spd(&mut r, n, n, n as f64);
        let xs = random_vec(&mut r, n);
        out.push((format!("random{n}"), build_rhs(a, xs).unwrap()));
    }
    out
}

fn diffs(report: &SolveReport) -> Vec<(f64, f64)> {
    let h = report.iterate_history.as_ref().unwrap();
    h.windows(2)
        .map(|w| (norm2(&sub(&w[1].0, &w[0].0)), norm2(&sub(&w[1].1, &w[0].1))))
        .collect()
}

#[test]
fn unit_parameters_agree_bitwise_on_all_problems() {
    for (name, p) in test_problems() {
        let f = factorize(&p.a).unwrap();
        let cfg = SolveConfig::new(1.0).with_history(true);
        let sor = solve_sor_like(&p, &f, &cfg).unwrap();
        let fpi = solve_fpi(&p, &f, &cfg).unwrap();
        let hs = sor.iterate_history.as_ref().unwrap();
        let hf = fpi.iterate_history.as_ref().unwrap();
        assert_eq!(hs.len(), hf.len(), "{name}");
        for (k, ((xs, ys), (xf, yf))) in hs.iter().zip(hf).enumerate() {
            let same = xs.iter().zip(xf).all(|(a, b)| a.to_bits() == b.to_bits())
                && ys.iter().zip(yf).all(|(a, b)| a.to_bits() == b.to_bits());
            assert!(same, "{name}: iterate {k} differs");
        }
        assert_eq!(sor.iterations, fpi.iterations, "{name}");
    }
}

#[test]
fn unit_parameters_agree_from_nonzero_start() {
    let p = gen_lattice(5);
    let f = factorize(&p.a).unwrap();
    let mut r = rng(5);
    let x0 = random_vec(&mut r, p.n());
    let y0 = random_vec(&mut r, p.n());
    let cfg = SolveConfig::new(1.0).with_history(true).with_start(x0, y0);
    let sor = solve_sor_like(&p, &f, &cfg).unwrap();
    let fpi = solve_fpi(&p, &f, &cfg).unwrap();
    assert_eq!(sor.iterate_history, fpi.iterate_history);
}

#[test]
fn lattice_sixteen_takes_eleven_iterations() {
    let p = gen_lattice(16);
    let f = factorize(&p.a).unwrap();
    let r = solve_sor_like(&p, &f, &SolveConfig::new(1.0)).unwrap();
    assert!(r.converged);
    assert_eq!(r.iterations, 11);
}

#[test]
fn fpi_at_numerical_optimum() {
    let p = gen_lattice(8);
    let f = factorize(&p.a).unwrap();
    let r = solve_fpi(&p, &f, &SolveConfig::new(0.961)).unwrap();
    assert!(r.converged && r.final_res <= 1e-8);
    assert!((10..=12).contains(&r.iterations), "{}", r.iterations);
}

#[test]
fn parameters_inside_ranges_converge_with_contraction() {
    let p = gen_lattice(8);
    let f = factorize(&p.a).unwrap();
    let nu = estimate_inv_norm(&p.a, DEFAULT_NU_TOL).unwrap();
    for (method, hi) in [
        (Method::Sor, range_sor_new(nu).unwrap().upper),
        (Method::Fpi, range_fpi_new(nu).unwrap().upper),
    ] {
        for i in 1..=20 {
            let param = hi * i as f64 / 21.0;
            let cfg = SolveConfig::new(param).with_k_max(1000).with_history(true);
            let report = solve(&p, &f, method, &cfg).unwrap();
            assert!(report.converged, "{method} {param} did not converge");
            let d = diffs(&report);
            let a = (1.0 - param).abs();
            let bound = |(dx, dy): (f64, f64)| match method {
                Method::Sor => (a * dx + param * nu * dy, param * a * dx + (param * param * nu + a) * dy),
                Method::Fpi => (nu * dy, (param * nu + a) * dy),
            };
            for k in 1..d.len() {
                let (bx, by) = bound(d[k - 1]);
                assert!(d[k].0 <= bx + 1e-10, "{method} {param} step {k}: x");
                assert!(d[k].1 <= by + 1e-10, "{method} {param} step {k}: y");
            }
            let rho = match method {
                Method::Sor => rho_w(param, nu),
                Method::Fpi => rho_u(param, nu),
            };
            assert!(rho < 1.0);
        }
    }
}

#[test]
fn converged_iterates_are_fixed_points_near_solution() {
    for (name, p) in test_problems() {
        let f = factorize(&p.a).unwrap();
        for method in [Method::Sor, Method::Fpi] {
            for param in [0.6, 0.9, 1.0, 1.1] {
                let cfg = SolveConfig::new(param).with_k_max(1000);
                let r = solve(&p, &f, method, &cfg).unwrap();
                assert!(r.converged, "{name} {method} {param}");
                assert!(r.iterations <= cfg.k_max);
                assert!(residual(&p, &r.x).unwrap() <= cfg.tol);
                let abs_x: Vec<f64> = r.x.iter().map(|v| v.abs()).collect();
                // ‖y - |x|‖ scales with ‖b‖, not ‖x‖; the two agree to within
                // ‖A‖ ≤ 12 on the lattices but not on the shifted random matrices
                let gap = norm2(&sub(&r.y, &abs_x));
                let scale = if name.starts_with("lattice") { norm2(&r.x) } else { norm2(&p.b) };
                assert!(gap / scale <= 10.0 * cfg.tol, "{name} {method} {param}");
                let xs = p.x_star.as_ref().unwrap();
                let err = norm2(&sub(&r.x, xs)) / norm2(xs);
                assert!(err <= 100.0 * cfg.tol, "{name} {method} {param}: {err:e}");
            }
        }
    }
}

#[test]
fn residual_history_is_per_iteration() {
    let p = gen_lattice(8);
    let f = factorize(&p.a).unwrap();
    let r = solve_sor_like(&p, &f, &SolveConfig::new(0.8).with_history(true)).unwrap();
    let h = r.iterate_history.as_ref().unwrap();
    assert_eq!(r.res_history.len(), r.iterations);
    for (k, res) in r.res_history.iter().enumerate() {
        assert_eq!(*res, residual(&p, &h[k + 1].0).unwrap());
    }
}

#[test]
fn outside_range_sor_fails_at_kmax() {
    let p = gen_lattice(8);
    let f = factorize(&p.a).unwrap();
    let r = solve_sor_like(&p, &f, &SolveConfig::new(1.9)).unwrap();
    assert!(!r.converged);
    assert_eq!(r.iterations, 100);
}

#[test]
fn trefethen_collection_iteration_counts() {
    // the Trefethen pattern is simple enough to rebuild when the files are absent
    for (full, nu, it, res) in [(20, 0.4244, 15, 9.0253e-9), (200, 0.4265, 11, 7.8160e-9)] {
        let a = trefethen_b(full);
        let n = a.n();
        let p = build_rhs(a, ave_core::alternating_xstar(n)).unwrap();
        let got_nu = estimate_inv_norm(&p.a, DEFAULT_NU_TOL).unwrap();
        let f = factorize(&p.a).unwrap();
        let r = solve_sor_like(&p, &f, &SolveConfig::new(1.0)).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, it, "Trefethen_{full}b");
        assert!((r.final_res - res).abs() < 1e-12, "{}", r.final_res);
        assert!((got_nu - nu).abs() < 5e-4, "{got_nu}");
    }
}

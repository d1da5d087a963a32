#![allow(dead_code)]

use std::path::PathBuf;

use ave_core::{load_matrix_market, SparseSpdMatrix};
use nalgebra::{DMatrix, Matrix2};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dense(a: &SparseSpdMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.n(), a.n(), &a.to_dense())
}

/// `1/λ_min` from a full symmetric eigendecomposition of a dense copy.
pub fn dense_inv_norm(a: &SparseSpdMatrix) -> f64 {
    let eig = dense(a).symmetric_eigen();
    1.0 / eig.eigenvalues.min()
}

/// Largest eigenvalue modulus of a general 2x2 matrix via nalgebra's
/// Schur-based complex eigenvalues.
pub fn spectral_radius_2x2(m: [[f64; 2]; 2]) -> f64 {
    let mat = Matrix2::new(m[0][0], m[0][1], m[1][0], m[1][1]);
    mat.complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn w_matrix(omega: f64, nu: f64) -> [[f64; 2]; 2] {
    let a = (1.0 - omega).abs();
    [[a, omega * nu], [omega * a, omega * omega * nu + a]]
}

pub fn u_matrix(tau: f64, nu: f64) -> [[f64; 2]; 2] {
    [[0.0, nu], [0.0, tau * nu + (1.0 - tau).abs()]]
}

/// `M·Mᵀ + shift·I` with `M` of size `n × k`, entries uniform in `[-1, 1]`.
pub fn random_spd(rng: &mut impl Rng, n: usize, k: usize, shift: f64) -> SparseSpdMatrix {
    let m = DMatrix::<f64>::from_fn(n, k, |_, _| rng.gen_range(-1.0..1.0));
    let a = &m * m.transpose() + DMatrix::<f64>::identity(n, n) * shift;
    // exact symmetry for storage
    let sym = (&a + a.transpose()) * 0.5;
    let row_major: Vec<f64> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| sym[(i, j)]).collect();
    SparseSpdMatrix::from_dense(n, &row_major).unwrap()
}

pub fn random_vec(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Directory holding `<name>.mtx` (or `<name>/<name>.mtx`) files:
/// `AVE_MATRIX_DIR`, else `data/matrices` at the workspace root.
pub fn matrix_dir() -> PathBuf {
    std::env::var_os("AVE_MATRIX_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/matrices"))
}

pub fn find_matrix(name: &str) -> Option<PathBuf> {
    let dir = matrix_dir();
    [
        dir.join(format!("{name}.mtx")),
        dir.join(name).join(format!("{name}.mtx")),
    ]
    .into_iter()
    .find(|p| p.is_file())
}

/// Loads a collection matrix, or prints a skip notice and returns `None`.
pub fn load_named(name: &str) -> Option<SparseSpdMatrix> {
    match find_matrix(name) {
        Some(p) => Some(load_matrix_market(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))),
        None => {
            eprintln!(
                "skipping {name}: matrix file not found under {}",
                matrix_dir().display()
            );
            None
        }
    }
}

fn first_primes(count: usize) -> Vec<usize> {
    let mut primes = Vec::with_capacity(count);
    let mut k = 2;
    while primes.len() < count {
        if primes.iter().take_while(|&&p| p * p <= k).all(|&p| k % p != 0) {
            primes.push(k);
        }
        k += 1;
    }
    primes
}

/// Trefethen matrix of order `full` (k-th prime on the diagonal, ones where
/// `|i - j|` is a power of two) with its first row and column removed, as in
/// the collection's `Trefethen_<full>b` entries.
pub fn trefethen_b(full: usize) -> SparseSpdMatrix {
    let primes = first_primes(full);
    let mut trips = Vec::new();
    for (i, &p) in primes.iter().enumerate().skip(1) {
        trips.push((i - 1, i - 1, p as f64));
        let mut k = 1;
        while i + k < full {
            trips.push((i - 1, i + k - 1, 1.0));
            trips.push((i + k - 1, i - 1, 1.0));
            k *= 2;
        }
    }
    SparseSpdMatrix::from_triplets(full - 1, &trips).unwrap()
}

/// Collection file if present, otherwise the Trefethen reconstruction
/// round-tripped through a Matrix Market file in `scratch`.
pub fn matrix_or_reconstruction(name: &str, scratch: &std::path::Path) -> Option<(PathBuf, bool)> {
    if let Some(p) = find_matrix(name) {
        return Some((p, false));
    }
    let full = match name {
        "Trefethen_20b" => 20,
        "Trefethen_200b" => 200,
        _ => return None,
    };
    let path = scratch.join(format!("{name}.mtx"));
    ave_core::write_matrix_market(&trefethen_b(full), std::fs::File::create(&path).unwrap())
        .unwrap();
    Some((path, true))
}

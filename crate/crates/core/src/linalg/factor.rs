use super::{check_len, SparseSpdMatrix};
use crate::{AveError, Result};

/// Envelope (skyline) Cholesky factor `A = L·Lᵀ`, computed once and reused
/// for every solve.
///
/// Row `i` of `L` is stored densely from its first structural nonzero column
/// `first[i]` through the diagonal. No reordering is applied, so the cost
/// tracks the envelope of `A` as given.
#[derive(Debug, Clone)]
pub struct FactorHandle {
    n: usize,
    first: Vec<usize>,
    ptr: Vec<usize>,
    data: Vec<f64>,
}

impl FactorHandle {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored entries of `L`.
    pub fn envelope_size(&self) -> usize {
        self.data.len()
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[self.ptr[i]..self.ptr[i + 1]]
    }

    pub fn solve(&self, r: &[f64]) -> Result<Vec<f64>> {
        let mut z = vec![0.0; self.n];
        self.solve_into(r, &mut z)?;
        Ok(z)
    }

    /// Solves `A·z = r` into `z`.
    pub fn solve_into(&self, r: &[f64], z: &mut [f64]) -> Result<()> {
        check_len(self.n, r.len())?;
        check_len(self.n, z.len())?;

        // L·w = r
        for i in 0..self.n {
            let row = self.row(i);
            let f = self.first[i];
            let (off, diag) = row.split_at(row.len() - 1);
            let s: f64 = off.iter().zip(&z[f..i]).map(|(l, w)| l * w).sum();
            z[i] = (r[i] - s) / diag[0];
        }
        // Lᵀ·z = w, column sweep over the rows of L
        for i in (0..self.n).rev() {
            let row = self.row(i);
            let f = self.first[i];
            let (off, diag) = row.split_at(row.len() - 1);
            z[i] /= diag[0];
            let zi = z[i];
            for (zk, l) in z[f..i].iter_mut().zip(off) {
                *zk -= l * zi;
            }
        }
        Ok(())
    }
}

/// Factorizes `a`, failing with [`AveError::NotPositiveDefinite`] at the
/// first non-positive pivot.
pub fn factorize(a: &SparseSpdMatrix) -> Result<FactorHandle> {
    let n = a.n();
    let first: Vec<usize> = (0..n)
        .map(|i| a.row(i).next().map_or(i, |(j, _)| j.min(i)))
        .collect();
    let mut ptr = Vec::with_capacity(n + 1);
    ptr.push(0);
    for i in 0..n {
        ptr.push(ptr[i] + i - first[i] + 1);
    }
    let mut data = vec![0.0; ptr[n]];

    for i in 0..n {
        let fi = first[i];
        let base = ptr[i];
        for (j, v) in a.row(i).take_while(|&(j, _)| j <= i) {
            data[base + j - fi] = v;
        }
        let (done, rest) = data.split_at_mut(base);
        let row_i = &mut rest[..i - fi + 1];
        for j in fi..i {
            let fj = first[j];
            let row_j = &done[ptr[j]..ptr[j + 1]];
            let k0 = fi.max(fj);
            let s: f64 = row_i[k0 - fi..j - fi]
                .iter()
                .zip(&row_j[k0 - fj..j - fj])
                .map(|(x, y)| x * y)
                .sum();
            row_i[j - fi] = (row_i[j - fi] - s) / row_j[j - fj];
        }
        let (off, diag) = row_i.split_at_mut(i - fi);
        let d = diag[0] - off.iter().map(|x| x * x).sum::<f64>();
        if !(d.is_finite() && d > 0.0) {
            return Err(AveError::NotPositiveDefinite { pivot: i, value: d });
        }
        diag[0] = d.sqrt();
    }
    Ok(FactorHandle {
        n,
        first,
        ptr,
        data,
    })
}

/// `A⁻¹·r` through a precomputed factor.
pub fn solve_with_factor(f: &FactorHandle, r: &[f64]) -> Result<Vec<f64>> {
    f.solve(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{matvec, norm2};

    fn rel_residual(a: &SparseSpdMatrix, z: &[f64], r: &[f64]) -> f64 {
        let az = matvec(a, z).unwrap();
        let d: Vec<f64> = az.iter().zip(r).map(|(x, y)| x - y).collect();
        norm2(&d) / norm2(r)
    }

    #[test]
    fn diagonal_solve() {
        let f = factorize(&SparseSpdMatrix::diagonal(&[4.0, 9.0]).unwrap()).unwrap();
        assert_eq!(f.solve(&[4.0, 9.0]).unwrap(), vec![1.0, 1.0]);
        // sqrt(2) is inexact, so only agree to rounding
        let f = factorize(&SparseSpdMatrix::diagonal(&[2.0, 4.0]).unwrap()).unwrap();
        let z = solve_with_factor(&f, &[2.0, 4.0]).unwrap();
        assert!(z.iter().all(|v| (v - 1.0).abs() < 1e-15), "{z:?}");
    }

    #[test]
    fn identity_solve() {
        let f = factorize(&SparseSpdMatrix::identity(2)).unwrap();
        assert_eq!(f.solve(&[3.0, -7.0]).unwrap(), vec![3.0, -7.0]);
    }

    #[test]
    fn two_by_two_solve() {
        let f = factorize(&SparseSpdMatrix::from_dense(2, &[4.0, 1.0, 1.0, 4.0]).unwrap()).unwrap();
        let z = f.solve(&[5.0, 5.0]).unwrap();
        assert!((z[0] - 1.0).abs() < 1e-15 && (z[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn indefinite_reports_pivot() {
        let a = SparseSpdMatrix::from_dense(2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        match factorize(&a).unwrap_err() {
            AveError::NotPositiveDefinite { pivot, value } => {
                assert_eq!(pivot, 1);
                assert_eq!(value, -3.0);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn envelope_with_gaps() {
        // arrow-like pattern: row 3 reaches column 0 through zeros
        let dense = [
            5.0, 0.0, 0.0, 1.0, //
            0.0, 4.0, 1.0, 0.0, //
            0.0, 1.0, 6.0, 2.0, //
            1.0, 0.0, 2.0, 7.0,
        ];
        let a = SparseSpdMatrix::from_dense(4, &dense).unwrap();
        let f = factorize(&a).unwrap();
        let r = [1.0, -2.0, 3.0, 0.5];
        let z = f.solve(&r).unwrap();
        assert!(rel_residual(&a, &z, &r) < 1e-15);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let f = factorize(&SparseSpdMatrix::identity(3)).unwrap();
        assert!(matches!(
            f.solve(&[1.0]),
            Err(AveError::DimensionMismatch { .. })
        ));
    }
}

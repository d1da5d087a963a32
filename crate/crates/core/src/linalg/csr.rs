use serde::{Deserialize, Serialize};

use super::check_len;
use crate::{AveError, Result};

/// Symmetric positive-definite matrix in CSR form with both triangles stored.
///
/// Construction checks the structural invariants (sorted unique columns,
/// exact value symmetry, positive diagonal). Positive definiteness itself is
/// only confirmed by a successful [`factorize`](super::factorize).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseSpdMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseSpdMatrix {
    pub fn from_csr(
        n: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if row_ptr.len() != n + 1 {
            return Err(AveError::InvalidMatrix(format!(
                "row_ptr has length {}, expected {}",
                row_ptr.len(),
                n + 1
            )));
        }
        if row_ptr[0] != 0 || row_ptr[n] != col_idx.len() || col_idx.len() != values.len() {
            return Err(AveError::InvalidMatrix(
                "row_ptr, col_idx and values are inconsistent".into(),
            ));
        }
        for i in 0..n {
            let (start, end) = (row_ptr[i], row_ptr[i + 1]);
            if start > end {
                return Err(AveError::InvalidMatrix(format!(
                    "row_ptr decreases at row {i}"
                )));
            }
            let cols = &col_idx[start..end];
            if let Some(&c) = cols.iter().find(|&&c| c >= n) {
                return Err(AveError::InvalidMatrix(format!(
                    "column index {c} out of range in row {i}"
                )));
            }
            if cols.windows(2).any(|w| w[0] >= w[1]) {
                return Err(AveError::InvalidMatrix(format!(
                    "column indices of row {i} are not strictly increasing"
                )));
            }
            if values[start..end].iter().any(|v| !v.is_finite()) {
                return Err(AveError::InvalidMatrix(format!(
                    "non-finite value in row {i}"
                )));
            }
        }
        let m = Self {
            n,
            row_ptr,
            col_idx,
            values,
        };
        for i in 0..n {
            for (j, v) in m.row(i) {
                if m.get(j, i) != Some(v) {
                    return Err(AveError::Symmetry { row: i, col: j });
                }
            }
            match m.get(i, i) {
                Some(d) if d > 0.0 => {}
                _ => {
                    return Err(AveError::InvalidMatrix(format!(
                        "diagonal entry {i} is missing or not positive"
                    )))
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from `(row, col, value)` triplets that already cover
    /// both triangles. Duplicates are summed.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(i, j, v) in triplets {
            if i >= n || j >= n {
                return Err(AveError::InvalidMatrix(format!(
                    "entry ({i}, {j}) outside a {n}x{n} matrix"
                )));
            }
            rows[i].push((j, v));
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(j, _)| j);
            for (j, v) in row {
                if col_idx.len() > *row_ptr.last().unwrap() && col_idx.last() == Some(&j) {
                    *values.last_mut().unwrap() += v;
                } else {
                    col_idx.push(j);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Self::from_csr(n, row_ptr, col_idx, values)
    }

    /// Dense row-major input; zeros are not stored.
    pub fn from_dense(n: usize, dense: &[f64]) -> Result<Self> {
        check_len(n * n, dense.len())?;
        let triplets: Vec<_> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let v = dense[i * n + j];
                (v != 0.0).then_some((i, j, v))
            })
            .collect();
        Self::from_triplets(n, &triplets)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n]).expect("identity is SPD")
    }

    pub fn diagonal(d: &[f64]) -> Result<Self> {
        let n = d.len();
        Self::from_csr(n, (0..=n).collect(), (0..n).collect(), d.to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Stored entries of row `i` as `(column, value)`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()]
            .binary_search(&j)
            .ok()
            .map(|k| self.values[range.start + k])
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.n * self.n];
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                dense[i * self.n + j] = v;
            }
        }
        dense
    }

    /// `out = A·x` without allocating.
    pub fn matvec_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        check_len(self.n, x.len())?;
        check_len(self.n, out.len())?;
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.row(i).map(|(j, v)| v * x[j]).sum();
        }
        Ok(())
    }
}

/// `A·x`.
pub fn matvec(a: &SparseSpdMatrix, x: &[f64]) -> Result<Vec<f64>> {
    let mut out = vec![0.0; a.n()];
    a.matvec_into(x, &mut out)?;
    Ok(out)
}

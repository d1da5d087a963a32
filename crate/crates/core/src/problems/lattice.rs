use super::{alternating_xstar, build_rhs, AveProblem};
use crate::linalg::SparseSpdMatrix;

/// `A = Tridiag(-I_m, S_m, -I_m)` with `S_m = tridiag(-1, 8, -1)`, so
/// `n = m²`, paired with the alternating solution `x* = (-1, 1, …)`.
///
/// # Panics
///
/// If `m == 0`.
pub fn gen_lattice(m: usize) -> AveProblem {
    assert!(m >= 1, "lattice size must be positive");
    let n = m * m;
    let mut row_ptr = Vec::with_capacity(n + 1);
    let mut col_idx = Vec::with_capacity(5 * n);
    let mut values = Vec::with_capacity(5 * n);
    row_ptr.push(0);
    for block in 0..m {
        for local in 0..m {
            let i = block * m + local;
            if block > 0 {
                col_idx.push(i - m);
                values.push(-1.0);
            }
            if local > 0 {
                col_idx.push(i - 1);
                values.push(-1.0);
            }
            col_idx.push(i);
            values.push(8.0);
            if local + 1 < m {
                col_idx.push(i + 1);
                values.push(-1.0);
            }
            if block + 1 < m {
                col_idx.push(i + m);
                values.push(-1.0);
            }
            row_ptr.push(col_idx.len());
        }
    }
    let a = SparseSpdMatrix::from_csr(n, row_ptr, col_idx, values)
        .expect("lattice matrix satisfies the CSR invariants");
    build_rhs(a, alternating_xstar(n)).expect("dimensions agree")
}

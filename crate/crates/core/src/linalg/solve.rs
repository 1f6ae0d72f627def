// SPDX-License-Identifier: Apache-2.0

//! LU factorization with partial pivoting and linear solves.

use crate::error::{Error, Result};
use crate::linalg::matrix::{c, ComplexMatrix};
use num_complex::Complex64;

/// Relative pivot threshold: pivots below `PIVOT_REL_TOL · ‖A‖_F` signal singularity.
pub const PIVOT_REL_TOL: f64 = 1e-14;

/// Partial-pivoted LU factorization of a square matrix.
pub struct LuFactors {
    n: usize,
    /// Combined L (unit lower, below diagonal) and U (on and above).
    lu: Vec<Complex64>,
    /// Row permutation applied to the input.
    perm: Vec<usize>,
    swaps: usize,
}

impl LuFactors {
    pub fn factor(a: &ComplexMatrix) -> Result<Self> {
        assert!(a.is_square(), "LU requires a square matrix");
        let n = a.rows();
        let threshold = PIVOT_REL_TOL * a.fro_norm();
        let mut lu: Vec<Complex64> = a.entries().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;

        for k in 0..n {
            let mut best = k;
            let mut best_mag = lu[k * n + k].norm();
            for i in k + 1..n {
                let mag = lu[i * n + k].norm();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            if best_mag <= threshold {
                return Err(Error::SingularMatrix { pivot: best_mag, threshold });
            }
            if best != k {
                for j in 0..n {
                    lu.swap(k * n + j, best * n + j);
                }
                perm.swap(k, best);
                swaps += 1;
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                if factor == Complex64::ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= factor * u;
                }
            }
        }
        Ok(LuFactors { n, lu, perm, swaps })
    }

    /// Solves A·X = B for each column of B.
    pub fn solve(&self, b: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(b.rows(), self.n, "solve rhs row mismatch");
        let n = self.n;
        let m = b.cols();
        let mut x = ComplexMatrix::zeros(n, m);
        // Apply the permutation, then forward- and back-substitute.
        for i in 0..n {
            for j in 0..m {
                x[(i, j)] = b[(self.perm[i], j)];
            }
        }
        for k in 0..n {
            for i in k + 1..n {
                let l = self.lu[i * n + k];
                if l == Complex64::ZERO {
                    continue;
                }
                for j in 0..m {
                    let t = x[(k, j)];
                    x[(i, j)] -= l * t;
                }
            }
        }
        for k in (0..n).rev() {
            let d = self.lu[k * n + k];
            for j in 0..m {
                x[(k, j)] /= d;
            }
            for i in 0..k {
                let u = self.lu[i * n + k];
                if u == Complex64::ZERO {
                    continue;
                }
                for j in 0..m {
                    let t = x[(k, j)];
                    x[(i, j)] -= u * t;
                }
            }
        }
        x
    }

    /// Determinant from the U diagonal and the swap parity.
    pub fn det(&self) -> Complex64 {
        let mut d = if self.swaps.is_multiple_of(2) { c(1.0) } else { c(-1.0) };
        for k in 0..self.n {
            d *= self.lu[k * self.n + k];
        }
        d
    }
}

/// Solves A·X = B with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(LuFactors::factor(a)?.solve(b))
}

/// Matrix inverse via LU; prefer [`solve`] when a product with the inverse is wanted.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    solve(a, &ComplexMatrix::identity(a.rows()))
}

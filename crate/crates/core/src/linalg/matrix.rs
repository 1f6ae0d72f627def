// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrices with row-major storage.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Dense `rows × cols` complex matrix.
///
/// Entries are stored row-major. Values are immutable in spirit: every
/// operation returns a fresh matrix, so instances are safe to share across
/// threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

#[inline]
pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, validating shape and finiteness.
    ///
    /// This is the ingestion constructor: non-finite entries are rejected.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || rows * cols != data.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{rows}x{cols} = {} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        for (k, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry { row: k / cols, col: k % cols });
            }
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0);
        }
        m
    }

    /// Diagonal matrix from the given entries.
    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Convenience constructor from real row slices (promoted to complex).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let k = rows[0].len();
        Self::from_fn(r, k, |i, j| c(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub(crate) fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Frobenius norm: square root of the sum of squared entry moduli.
    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// 1-norm: maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.cols {
            let mut s = 0.0;
            for i in 0..self.rows {
                s += self[(i, j)].norm();
            }
            best = best.max(s);
        }
        best
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Conjugate transpose A*.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Plain transpose Aᵀ (no conjugation; used by Kronecker/vec identities).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(c(s))
    }

    /// Matrix product. Panics on inner-dimension mismatch (programming error).
    pub fn matmul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let arow = self.row(i);
            let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &aik) in arow.iter().enumerate() {
                if aik == Complex64::ZERO {
                    continue;
                }
                let brow = rhs.row(k);
                for (o, &bkj) in orow.iter_mut().zip(brow.iter()) {
                    *o += aik * bkj;
                }
            }
        }
        out
    }

    /// Kronecker product A ⊗ B of shape (p·r)×(q·s).
    pub fn kron(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let (p, q) = (self.rows, self.cols);
        let (r, s) = (rhs.rows, rhs.cols);
        let mut out = ComplexMatrix::zeros(p * r, q * s);
        for i in 0..p {
            for j in 0..q {
                let aij = self[(i, j)];
                if aij == Complex64::ZERO {
                    continue;
                }
                for k in 0..r {
                    for l in 0..s {
                        out[(i * r + k, j * s + l)] = aij * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Column-stacking vectorization: vec(A)[j·rows + i] = A[i, j].
    pub fn vec(&self) -> Vec<Complex64> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self[(i, j)]);
            }
        }
        v
    }

    /// Inverse of [`vec`](Self::vec): rebuilds an n×m matrix from a stacked vector.
    pub fn unvec(v: &[Complex64], rows: usize, cols: usize) -> Result<Self> {
        if v.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries for {rows}x{cols}", rows * cols),
                found: format!("{} entries", v.len()),
            });
        }
        Ok(Self::from_fn(rows, cols, |i, j| v[j * rows + i]))
    }

    /// Stacks `self` on top of `other` (the [E; F] block convention).
    pub fn vstack(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ComplexMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Extracts the block with top-left corner (r0, c0) of shape rows×cols.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> ComplexMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Writes `other` into the block with top-left corner (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, other: &ComplexMatrix) {
        assert!(r0 + other.rows <= self.rows && c0 + other.cols <= self.cols);
        for i in 0..other.rows {
            for j in 0..other.cols {
                self[(r0 + i, c0 + j)] = other[(i, j)];
            }
        }
    }

    /// Assembles the 2n×2n block upper-triangular matrix [[X, E], [0, X]].
    pub fn block_upper(x: &ComplexMatrix, e: &ComplexMatrix) -> ComplexMatrix {
        let n = x.rows();
        assert!(x.is_square() && e.rows() == n && e.cols() == n);
        let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
        m.set_block(0, 0, x);
        m.set_block(0, n, e);
        m.set_block(n, n, x);
        m
    }

    /// Trace inner product ⟨X, Y⟩ = trace(Y* X).
    pub fn inner(&self, other: &ComplexMatrix) -> Complex64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(&x, &y)| y.conj() * x)
            .sum()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(c(-1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_bad_shape_and_nonfinite() {
        assert!(ComplexMatrix::new(2, 2, vec![c(1.0); 3]).is_err());
        let mut data = vec![c(1.0); 4];
        data[2] = Complex64::new(f64::NAN, 0.0);
        match ComplexMatrix::new(2, 2, data) {
            Err(Error::NonFiniteEntry { row: 1, col: 0 }) => {}
            other => panic!("expected NonFiniteEntry(1,0), got {other:?}"),
        }
    }

    #[test]
    fn fro_norm_identity() {
        assert!((ComplexMatrix::identity(3).fro_norm() - 3.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn one_norm_max_column_sum() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, -2.0], &[3.0, 4.0]]);
        assert_eq!(a.one_norm(), 6.0);
    }

    #[test]
    fn inner_product_matches_fro_norm() {
        let x = ComplexMatrix::from_fn(3, 3, |i, j| Complex64::new(i as f64 - 1.0, j as f64 + 0.5));
        let ip = x.inner(&x);
        assert!((ip.re - x.fro_norm().powi(2)).abs() < 1e-12);
        assert!(ip.im.abs() < 1e-12);
    }

    #[test]
    fn vec_is_column_major() {
        // [[1,3],[2,4]] stacks to (1,2,3,4)
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 3.0], &[2.0, 4.0]]);
        let v = a.vec();
        assert_eq!(v, vec![c(1.0), c(2.0), c(3.0), c(4.0)]);
        let back = ComplexMatrix::unvec(&v, 2, 2).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn unvec_shape_mismatch() {
        assert!(ComplexMatrix::unvec(&[c(1.0), c(2.0), c(3.0)], 2, 2).is_err());
    }

    #[test]
    fn kron_identity_blocks() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let k = ComplexMatrix::identity(2).kron(&m);
        // block-diag(M, M)
        assert_eq!(k.block(0, 0, 2, 2), m);
        assert_eq!(k.block(2, 2, 2, 2), m);
        assert_eq!(k.block(0, 2, 2, 2), ComplexMatrix::zeros(2, 2));

        let shift = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let k2 = shift.kron(&ComplexMatrix::identity(2));
        assert_eq!(k2.block(0, 2, 2, 2), ComplexMatrix::identity(2));
        assert_eq!(k2.block(2, 0, 2, 2), ComplexMatrix::zeros(2, 2));
    }
}

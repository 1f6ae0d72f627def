// SPDX-License-Identifier: Apache-2.0

//! Fréchet derivatives of exp, log, and of the bivariate map (A, B) ↦ A^B,
//! plus the adjoint operator and explicit Kronecker matrices.
//!
//! The canonical route for L_exp and L_log is the doubled block identity
//!
//! ```text
//! φ([[X, E], [0, X]]) = [[φ(X), L_φ(X; E)], [0, φ(X)]]
//! ```
//!
//! which is exact up to the accuracy of `expm`/`logm`. Integral forms are
//! provided in [`quadrature`] as independent cross-check paths, and explicit
//! Kronecker matrices in [`kronecker`].

mod kronecker;
pub mod quadrature;

pub use kronecker::{
    build_k_exp, build_k_exp_kron, build_k_f, build_k_log, build_k_log_quad,
    FrechetKroneckerMatrix, KroneckerKind,
};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::matfun::{expm, logm, DomainCheckedMatrix};

/// A pair (E, F) of perturbation directions, identified with the stacked
/// block [E; F]. Norm is the stacked Frobenius norm √(‖E‖² + ‖F‖²).
#[derive(Debug, Clone)]
pub struct DirectionPair {
    e: ComplexMatrix,
    f: ComplexMatrix,
}

impl DirectionPair {
    pub fn new(e: ComplexMatrix, f: ComplexMatrix) -> Result<Self> {
        if !e.is_square() || e.rows() != f.rows() || e.cols() != f.cols() {
            return Err(Error::ShapeMismatch {
                expected: "two square matrices of equal dimension".into(),
                found: format!("{}x{} and {}x{}", e.rows(), e.cols(), f.rows(), f.cols()),
            });
        }
        Ok(DirectionPair { e, f })
    }

    pub fn e(&self) -> &ComplexMatrix {
        &self.e
    }

    pub fn f(&self) -> &ComplexMatrix {
        &self.f
    }

    pub fn dim(&self) -> usize {
        self.e.rows()
    }

    /// Stacked-block Frobenius norm.
    pub fn norm(&self) -> f64 {
        (self.e.fro_norm().powi(2) + self.f.fro_norm().powi(2)).sqrt()
    }

    /// The 2n×n stacked block [E; F].
    pub fn stacked(&self) -> ComplexMatrix {
        self.e.vstack(&self.f)
    }

    /// Splits a 2n×n stacked block back into (E, F).
    pub fn from_stacked(z: &ComplexMatrix) -> Result<Self> {
        let n = z.cols();
        if z.rows() != 2 * n {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", 2 * n, n),
                found: format!("{}x{}", z.rows(), z.cols()),
            });
        }
        Ok(DirectionPair { e: z.block(0, 0, n, n), f: z.block(n, 0, n, n) })
    }

    pub fn scale_re(&self, s: f64) -> DirectionPair {
        DirectionPair { e: self.e.scale_re(s), f: self.f.scale_re(s) }
    }
}

/// Fréchet derivative of the matrix exponential in direction E, via the
/// doubled block formula.
pub fn frechet_exp(a: &ComplexMatrix, e: &ComplexMatrix) -> ComplexMatrix {
    assert!(a.is_square() && a.rows() == e.rows() && a.cols() == e.cols());
    let n = a.rows();
    let big = expm(&ComplexMatrix::block_upper(a, e));
    big.block(0, n, n, n)
}

/// Fréchet derivative of the principal logarithm in direction E, via the
/// doubled block formula. The block matrix shares A's spectrum, so no fresh
/// domain check is needed.
pub fn frechet_log(a: &DomainCheckedMatrix, e: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.dim();
    assert!(e.rows() == n && e.cols() == n);
    let block = DomainCheckedMatrix::assume_validated(ComplexMatrix::block_upper(a.matrix(), e));
    let big = logm(&block)?;
    Ok(big.block(0, n, n, n))
}

/// Precomputed state for repeated Fréchet and adjoint applications at a fixed
/// argument pair (A, B): the power-method estimator and the Kronecker-matrix
/// builder both apply the derivative many times at the same point.
#[derive(Debug, Clone)]
pub struct MmexpDerivative {
    a: DomainCheckedMatrix,
    b: ComplexMatrix,
    log_a: ComplexMatrix,
    /// log(A)·B, the exponent of A^B.
    log_a_b: ComplexMatrix,
    a_star: DomainCheckedMatrix,
    b_star: ComplexMatrix,
    /// (log(A)·B)*, the argument of L_exp in the adjoint formula.
    log_a_b_star: ComplexMatrix,
    /// log(A*) = (log A)*.
    log_a_star: ComplexMatrix,
}

impl MmexpDerivative {
    pub fn new(a: &DomainCheckedMatrix, b: &ComplexMatrix) -> Result<Self> {
        let n = a.dim();
        if b.rows() != n || b.cols() != n {
            return Err(Error::ShapeMismatch {
                expected: format!("{n}x{n} exponent"),
                found: format!("{}x{}", b.rows(), b.cols()),
            });
        }
        let log_a = logm(a)?;
        let log_a_b = log_a.matmul(b);
        Ok(MmexpDerivative {
            a: a.clone(),
            b: b.clone(),
            log_a_star: log_a.conj_transpose(),
            log_a_b_star: log_a_b.conj_transpose(),
            a_star: a.conj_transpose(),
            b_star: b.conj_transpose(),
            log_a,
            log_a_b,
        })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn log_a(&self) -> &ComplexMatrix {
        &self.log_a
    }

    pub fn log_a_b(&self) -> &ComplexMatrix {
        &self.log_a_b
    }

    /// The function value A^B = e^{log(A)·B}.
    pub fn value(&self) -> ComplexMatrix {
        expm(&self.log_a_b)
    }

    /// L_f(A,B; E,F) = L_exp(log(A)·B; log(A)·F + L_log(A; E)·B).
    pub fn apply(&self, e: &ComplexMatrix, f: &ComplexMatrix) -> Result<ComplexMatrix> {
        let inner = &self.log_a.matmul(f) + &frechet_log(&self.a, e)?.matmul(&self.b);
        Ok(frechet_exp(&self.log_a_b, &inner))
    }

    /// Adjoint under ⟨X,Y⟩ = trace(Y*X):
    /// L_f★(A,B; W) = ( L_log(A*; L_exp((log(A)B)*; W)·B*), log(A*)·L_exp((log(A)B)*; W) ).
    pub fn apply_adjoint(&self, w: &ComplexMatrix) -> Result<DirectionPair> {
        let core = frechet_exp(&self.log_a_b_star, w);
        let e_part = frechet_log(&self.a_star, &core.matmul(&self.b_star))?;
        let f_part = self.log_a_star.matmul(&core);
        DirectionPair::new(e_part, f_part)
    }
}

/// Fréchet derivative of f(A,B) = A^B in direction (E, F).
pub fn frechet_mmexp(
    a: &DomainCheckedMatrix,
    b: &ComplexMatrix,
    e: &ComplexMatrix,
    f: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    MmexpDerivative::new(a, b)?.apply(e, f)
}

/// Same derivative through the 2n-dimensional route: block (1,2) of
/// f([[A,E],[0,A]], [[B,F],[0,B]]). Costlier than [`frechet_mmexp`]; kept as
/// an independent cross-check.
pub fn frechet_mmexp_block(
    a: &DomainCheckedMatrix,
    b: &ComplexMatrix,
    e: &ComplexMatrix,
    f: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let n = a.dim();
    let big = mmexp_on_blocks(a, b, e, f)?;
    Ok(big.block(0, n, n, n))
}

/// f evaluated on the 2×2 block-triangular pair; exposes all four blocks so
/// tests can verify the full block identity, not just the (1,2) corner.
pub fn mmexp_on_blocks(
    a: &DomainCheckedMatrix,
    b: &ComplexMatrix,
    e: &ComplexMatrix,
    f: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let block_a =
        DomainCheckedMatrix::assume_validated(ComplexMatrix::block_upper(a.matrix(), e));
    let block_b = ComplexMatrix::block_upper(b, f);
    let log_block = logm(&block_a)?;
    Ok(expm(&log_block.matmul(&block_b)))
}

/// Adjoint of the Fréchet derivative of A^B applied to W.
pub fn adjoint_mmexp(
    a: &DomainCheckedMatrix,
    b: &ComplexMatrix,
    w: &ComplexMatrix,
) -> Result<DirectionPair> {
    MmexpDerivative::new(a, b)?.apply_adjoint(w)
}

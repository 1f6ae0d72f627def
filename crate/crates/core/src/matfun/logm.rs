// SPDX-License-Identifier: Apache-2.0

//! Principal matrix logarithm by inverse scaling and squaring: take square
//! roots until the matrix sits near the identity, apply a diagonal Padé
//! approximant of the logarithm, and scale back by 2^s.

use crate::error::{Error, Result};
use crate::linalg::{solve, sqrtm, ComplexMatrix};
use crate::matfun::domain::DomainCheckedMatrix;
use crate::quad::gauss_legendre_01;

/// Square roots are taken until ‖A - I‖₁ falls below this.
pub const LOGM_SQRT_THRESHOLD: f64 = 0.25;

/// Order of the diagonal Padé approximant applied after root-taking.
pub const LOGM_PADE_ORDER: usize = 7;

const MAX_SQRTS: usize = 60;

/// Principal logarithm: the unique X with e^X = A whose eigenvalues have
/// imaginary parts in (-π, π).
pub fn logm(a: &DomainCheckedMatrix) -> Result<ComplexMatrix> {
    let n = a.dim();
    let eye = ComplexMatrix::identity(n);
    let mut cur = a.matrix().clone();
    let mut sqrts = 0usize;
    while (&cur - &eye).one_norm() >= LOGM_SQRT_THRESHOLD {
        if sqrts == MAX_SQRTS {
            return Err(Error::NoConvergence {
                what: "inverse scaling and squaring",
                iterations: MAX_SQRTS,
            });
        }
        cur = sqrtm(&cur)?;
        sqrts += 1;
    }
    let log_small = pade_log(&(&cur - &eye))?;
    Ok(log_small.scale_re((1u64 << sqrts) as f64))
}

/// Diagonal Padé approximant of log(I + X) in partial-fraction form:
/// Σ wᵢ·(I + tᵢX)⁻¹X over the Gauss–Legendre rule of order [`LOGM_PADE_ORDER`].
fn pade_log(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = x.rows();
    let (nodes, weights) = gauss_legendre_01(LOGM_PADE_ORDER);
    let mut acc = ComplexMatrix::zeros(n, n);
    let eye = ComplexMatrix::identity(n);
    for (&t, &w) in nodes.iter().zip(&weights) {
        // (I + tX)⁻¹X = X(I + tX)⁻¹ since both factors are functions of X.
        let term = solve(&(&eye + &x.scale_re(t)), x)?;
        acc = &acc + &term.scale_re(w);
    }
    Ok(acc)
}

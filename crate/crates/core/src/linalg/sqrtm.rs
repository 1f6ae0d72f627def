// SPDX-License-Identifier: Apache-2.0

//! Principal matrix square root via the product form of the Denman–Beavers
//! iteration with determinantal scaling. Transformation-free: only inverses
//! and products, no Schur decomposition.

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::solve::LuFactors;

/// Relative increment tolerance for declaring convergence.
pub const SQRTM_TOL: f64 = 1e-14;

/// Iteration cap; exceeding it signals eigenvalues at or near ℝ₀⁻.
pub const SQRTM_MAX_ITER: usize = 50;

/// Principal square root of a matrix with no eigenvalues on the closed
/// negative real axis (caller-validated). Eigenvalues of the result lie in
/// the open right half-plane.
pub fn sqrtm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    assert!(a.is_square(), "sqrtm requires a square matrix");
    let n = a.rows();
    let eye = ComplexMatrix::identity(n);

    // Product form: M_{k+1} = (I + (M~ + M~^{-1})/2)/2, X_{k+1} = X_k (I + M~^{-1}) μ/2,
    // where M~ = μ² M_k and μ is the determinantal scaling factor.
    let mut m = a.clone();
    let mut x = a.clone();
    let mut prev_inc = f64::INFINITY;

    for iter in 0..SQRTM_MAX_ITER {
        let lu = LuFactors::factor(&m)?;
        let m_inv = lu.solve(&eye);

        // Determinantal scaling accelerates the early transient; switch it
        // off near convergence where it only adds rounding noise.
        let close = (&m - &eye).fro_norm() < 1e-2;
        let mu = if close {
            1.0
        } else {
            let det_mag = lu.det().norm();
            if det_mag.is_finite() && det_mag > 0.0 {
                det_mag.powf(-1.0 / (2.0 * n as f64)).clamp(1e-4, 1e4)
            } else {
                1.0
            }
        };

        let m_scaled = m.scale_re(mu * mu);
        let m_inv_scaled = m_inv.scale_re(1.0 / (mu * mu));
        let next_m = (&eye + &(&m_scaled + &m_inv_scaled).scale_re(0.5)).scale_re(0.5);
        let next_x = x.matmul(&(&eye + &m_inv_scaled)).scale_re(0.5 * mu);

        let inc = (&next_x - &x).fro_norm();
        let scale = next_x.fro_norm();
        x = next_x;
        m = next_m;

        if inc <= SQRTM_TOL * scale {
            return Ok(x);
        }
        // Quadratic convergence stagnates at roundoff; accept once the
        // increment stops shrinking at a small level.
        if inc >= 0.5 * prev_inc && inc <= 1e-7 * scale && iter > 2 {
            return Ok(x);
        }
        prev_inc = inc;
    }
    Err(Error::NoConvergence { what: "Denman-Beavers square root", iterations: SQRTM_MAX_ITER })
}

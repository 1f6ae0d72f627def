// SPDX-License-Identifier: Apache-2.0

//! Relative condition number of f(A,B) = A^B in the Frobenius norm.
//!
//! Three routes with very different costs:
//! * [`power_method_estimate`] — alternate L_f and L_f★ applications, O(n³)
//!   per iteration, the production estimator;
//! * [`exact_cond`] — σ_max of the explicit n²×2n² Kronecker matrix, O(n⁵),
//!   the reference oracle for small n;
//! * [`upper_bound`] — the closed-form envelope
//!   e^{‖log A‖·‖B‖}·√(‖L_log(A)‖²‖B‖² + ‖log A‖²), always ≥ ‖L_f(A,B)‖.

use crate::error::{Error, Result};
use crate::frechet::{build_k_f, build_k_log, frechet_log, DirectionPair, MmexpDerivative};
use crate::linalg::ComplexMatrix;
use crate::matfun::DomainCheckedMatrix;
use crate::mmexp::MatrixPair;
use num_complex::Complex64;

/// Default power-method tolerance (the experiment's working value).
pub const DEFAULT_TOL: f64 = 1e-1;

/// Default power-method iteration cap.
pub const DEFAULT_MAX_ITER: usize = 20;

/// Tolerance for the Gram power iteration inside [`exact_cond`].
pub const EXACT_TOL: f64 = 1e-10;

/// Sweep cap for the Gram power iteration inside [`exact_cond`].
pub const EXACT_MAX_SWEEPS: usize = 1000;

/// Outcome of a condition-number computation.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    /// Estimate of the operator norm ‖L_f(A,B)‖_F.
    pub estimate_opnorm: f64,
    /// Relative condition number κ_f = ‖(A,B)‖_F·‖L_f‖_F/‖A^B‖_F.
    pub kappa: f64,
    /// The γ_k iterates, in order of computation.
    pub gammas: Vec<f64>,
    /// Completed iterations (power steps or Gram sweeps).
    pub iterations: usize,
    /// σ_max of the explicit Kronecker matrix, when that route was taken.
    pub exact_opnorm: Option<f64>,
    /// The closed-form envelope value.
    pub upper_bound: f64,
    /// Stopping tolerance in force.
    pub tol: f64,
    pub converged: bool,
}

/// Deterministic default start: the all-ones pair, normalized.
fn ones_start(n: usize) -> DirectionPair {
    let ones = ComplexMatrix::from_fn(n, n, |_, _| Complex64::ONE);
    let pair = DirectionPair::new(ones.clone(), ones).expect("square");
    let norm = pair.norm();
    pair.scale_re(1.0 / norm)
}

/// Deterministic fallback start for the measure-zero case where the first
/// start is orthogonal to the top singular subspace: a ±1 checkerboard.
fn checkerboard_start(n: usize) -> DirectionPair {
    let board = ComplexMatrix::from_fn(n, n, |i, j| {
        if (i + j) % 2 == 0 {
            Complex64::ONE
        } else {
            -Complex64::ONE
        }
    });
    let pair = DirectionPair::new(board.clone(), board.scale_re(-1.0)).expect("square");
    let norm = pair.norm();
    pair.scale_re(1.0 / norm)
}

/// Power method on the operator pair (L_f, L_f★):
///
/// ```text
/// W_{k+1} = L_f(A,B; E_k, F_k)
/// Z_{k+1} = L_f★(A,B; W_{k+1})
/// γ_{k+1} = ‖Z_{k+1}‖_F / ‖W_{k+1}‖_F
/// (E_{k+1}, F_{k+1}) = blocks of Z_{k+1}
/// ```
///
/// starting from γ₀ = 0, γ₁ = 1 (the first computed ratio overwrites γ₁, so a
/// full iteration always runs), stopping once |γ_{k+1} − γ_k| ≤ tol·γ_{k+1}.
/// Iterates are renormalized between steps; the γ sequence is unchanged by
/// that scaling and the iterates stay representable for ill-conditioned pairs.
pub fn power_method_estimate(
    pair: &MatrixPair,
    tol: f64,
    max_iter: usize,
    start: Option<DirectionPair>,
) -> Result<ConditionReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::PreconditionFailed(format!("tol must be positive, got {tol}")));
    }
    if max_iter < 1 {
        return Err(Error::PreconditionFailed("max_iter must be at least 1".into()));
    }
    let n = pair.dim();
    let op = MmexpDerivative::new(pair.base(), pair.exponent())?;

    let mut dir = start.unwrap_or_else(|| ones_start(n));
    let mut used_fallback = false;
    let mut gamma_prev = 0.0; // γ₀
    let mut gamma = 1.0; // γ₁ placeholder, overwritten by the first ratio
    let mut gammas = Vec::new();
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iter {
        let w = op.apply(dir.e(), dir.f())?;
        let w_norm = w.fro_norm();
        if w_norm == 0.0 {
            if !used_fallback {
                // Restart once from a different deterministic direction.
                used_fallback = true;
                dir = checkerboard_start(n);
                continue;
            }
            // L_f annihilates both starts: the operator is zero.
            gamma = 0.0;
            gammas.push(0.0);
            iterations += 1;
            converged = true;
            break;
        }
        let z = op.apply_adjoint(&w)?;
        let ratio = z.norm() / w_norm;
        if iterations > 0 {
            gamma_prev = gamma;
        }
        gamma = ratio;
        gammas.push(gamma);
        iterations += 1;
        let z_norm = z.norm();
        if z_norm > 0.0 {
            dir = z.scale_re(1.0 / z_norm);
        }
        if (gamma - gamma_prev).abs() <= tol * gamma {
            converged = true;
            break;
        }
    }

    let value_norm = op.value().fro_norm();
    let kappa = pair.stacked_norm() * gamma / value_norm;
    let bound = eq19_bound(pair.base(), pair.exponent(), &op, false)?;
    Ok(ConditionReport {
        estimate_opnorm: gamma,
        kappa,
        gammas,
        iterations,
        exact_opnorm: None,
        upper_bound: bound,
        tol,
        converged,
    })
}

/// Exact operator norm: builds K_f(A,B) explicitly and runs a Gram power
/// iteration (on K*K) from the normalized all-ones vector. O(n⁵); n ≤ 16.
pub fn exact_cond(pair: &MatrixPair) -> Result<ConditionReport> {
    let op = MmexpDerivative::new(pair.base(), pair.exponent())?;
    let k = build_k_f(pair.base(), pair.exponent())?;
    let (sigma, gammas, iterations, converged) =
        gram_sigma_max(k.matrix(), EXACT_TOL, EXACT_MAX_SWEEPS);
    let value_norm = op.value().fro_norm();
    let kappa = pair.stacked_norm() * sigma / value_norm;
    let bound = eq19_bound(pair.base(), pair.exponent(), &op, true)?;
    Ok(ConditionReport {
        estimate_opnorm: sigma,
        kappa,
        gammas,
        iterations,
        exact_opnorm: Some(sigma),
        upper_bound: bound,
        tol: EXACT_TOL,
        converged,
    })
}

/// Closed-form envelope for ‖L_f(A,B)‖_F:
/// e^{‖log A‖_F‖B‖_F}·√(‖L_log(A)‖_F²‖B‖_F² + ‖log A‖_F²).
///
/// ‖L_log(A)‖_F is σ_max of the columnwise K_log for n ≤ 16 and a power-method
/// estimate above that size.
pub fn upper_bound(pair: &MatrixPair) -> Result<f64> {
    let op = MmexpDerivative::new(pair.base(), pair.exponent())?;
    eq19_bound(pair.base(), pair.exponent(), &op, pair.dim() <= 16)
}

fn eq19_bound(
    a: &DomainCheckedMatrix,
    b: &ComplexMatrix,
    op: &MmexpDerivative,
    exact_log_norm: bool,
) -> Result<f64> {
    let log_norm = op.log_a().fro_norm();
    let b_norm = b.fro_norm();
    let l_log_norm = if exact_log_norm && a.dim() <= 16 {
        let k_log = build_k_log(a)?;
        gram_sigma_max(k_log.matrix(), EXACT_TOL, EXACT_MAX_SWEEPS).0
    } else {
        log_operator_norm_estimate(a, 1e-8, 200)?
    };
    Ok((log_norm * b_norm).exp() * (l_log_norm.powi(2) * b_norm.powi(2) + log_norm.powi(2)).sqrt())
}

/// Power-method estimate of ‖L_log(A)‖_F. The adjoint of L_log(A) under the
/// trace inner product is L_log(A*), since K_log(A)* = K_log(A*).
fn log_operator_norm_estimate(
    a: &DomainCheckedMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let n = a.dim();
    let a_star = a.conj_transpose();
    let mut e = ComplexMatrix::from_fn(n, n, |_, _| Complex64::ONE).scale_re(1.0 / n as f64);
    let mut gamma_prev = 0.0;
    let mut gamma = 1.0;
    for iter in 0..max_iter {
        let w = frechet_log(a, &e)?;
        let w_norm = w.fro_norm();
        if w_norm == 0.0 {
            return Ok(0.0);
        }
        let z = frechet_log(&a_star, &w)?;
        if iter > 0 {
            gamma_prev = gamma;
        }
        gamma = z.fro_norm() / w_norm;
        let z_norm = z.fro_norm();
        if z_norm > 0.0 {
            e = z.scale_re(1.0 / z_norm);
        }
        if (gamma - gamma_prev).abs() <= tol * gamma {
            break;
        }
    }
    Ok(gamma)
}

/// Series bound ‖log A‖_F ≤ ‖A−I‖_F/(1 − ‖A−I‖_F), valid for ‖A−I‖_F < 1.
pub fn log_norm_bound(a: &ComplexMatrix) -> Result<f64> {
    assert!(a.is_square());
    let x = (a - &ComplexMatrix::identity(a.rows())).fro_norm();
    if x >= 1.0 {
        return Err(Error::PreconditionFailed(format!(
            "log_norm_bound requires ||A - I||_F < 1, got {x:.6e}"
        )));
    }
    Ok(x / (1.0 - x))
}

/// Largest singular value of a rectangular matrix by power iteration on the
/// Gram operator K*K, started from the normalized all-ones vector. Returns
/// (σ, γ sequence, sweeps, converged).
pub(crate) fn gram_sigma_max(
    k: &ComplexMatrix,
    tol: f64,
    max_sweeps: usize,
) -> (f64, Vec<f64>, usize, bool) {
    let cols = k.cols();
    let scale = 1.0 / (cols as f64).sqrt();
    let mut x: Vec<Complex64> = vec![Complex64::new(scale, 0.0); cols];
    let mut gammas = Vec::new();
    let mut gamma_prev = 0.0;
    let mut gamma = 0.0;
    let mut sweeps = 0;
    let mut converged = false;

    while sweeps < max_sweeps {
        let y = matvec(k, &x);
        let z = matvec_adjoint(k, &y);
        let z_norm = vec_norm(&z);
        if z_norm == 0.0 {
            gamma = 0.0;
            gammas.push(0.0);
            sweeps += 1;
            converged = true;
            break;
        }
        if sweeps > 0 {
            gamma_prev = gamma;
        }
        // ‖x‖ = 1, so ‖K*K x‖ → σ².
        gamma = z_norm.sqrt();
        gammas.push(gamma);
        sweeps += 1;
        for (xi, zi) in x.iter_mut().zip(&z) {
            *xi = zi / z_norm;
        }
        if sweeps > 1 && (gamma - gamma_prev).abs() <= tol * gamma {
            converged = true;
            break;
        }
    }
    (gamma, gammas, sweeps, converged)
}

fn matvec(k: &ComplexMatrix, x: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; k.rows()];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::ZERO;
        for (j, &xj) in x.iter().enumerate() {
            acc += k[(i, j)] * xj;
        }
        *slot = acc;
    }
    out
}

fn matvec_adjoint(k: &ComplexMatrix, y: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; k.cols()];
    for (i, &yi) in y.iter().enumerate() {
        for (j, slot) in out.iter_mut().enumerate() {
            *slot += k[(i, j)].conj() * yi;
        }
    }
    out
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

// SPDX-License-Identifier: Apache-2.0

//! Matrix-matrix exponentiation A^B = e^{log(A)·B}, its left variant
//! ᴮA = e^{B·log(A)}, scalar-matrix exponentiation t^B, and two independent
//! oracles: the truncated power series and a closed form for normal 2×2 bases.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::matfun::{expm, logm, DomainCheckedMatrix};
use num_complex::Complex64;

/// A validated argument pair for A^B: A carries a passed domain check and
/// B shares its dimension.
#[derive(Debug, Clone)]
pub struct MatrixPair {
    a: DomainCheckedMatrix,
    b: ComplexMatrix,
}

impl MatrixPair {
    pub fn new(a: DomainCheckedMatrix, b: ComplexMatrix) -> Result<Self> {
        if b.rows() != a.dim() || b.cols() != a.dim() {
            return Err(Error::ShapeMismatch {
                expected: format!("{0}x{0} exponent", a.dim()),
                found: format!("{}x{}", b.rows(), b.cols()),
            });
        }
        Ok(MatrixPair { a, b })
    }

    pub fn base(&self) -> &DomainCheckedMatrix {
        &self.a
    }

    pub fn exponent(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Stacked-pair Frobenius norm ‖(A,B)‖ = √(‖A‖² + ‖B‖²).
    pub fn stacked_norm(&self) -> f64 {
        (self.a.matrix().fro_norm().powi(2) + self.b.fro_norm().powi(2)).sqrt()
    }
}

/// A^B = e^{log(A)·B}.
pub fn mm_exp(pair: &MatrixPair) -> Result<ComplexMatrix> {
    let log_a = logm(pair.base())?;
    Ok(expm(&log_a.matmul(pair.exponent())))
}

/// Left variant ᴮA = e^{B·log(A)}; equals B·A^B·B⁻¹ for nonsingular B.
pub fn mm_exp_left(pair: &MatrixPair) -> Result<ComplexMatrix> {
    let log_a = logm(pair.base())?;
    Ok(expm(&pair.exponent().matmul(&log_a)))
}

/// Scalar-matrix exponentiation t^B = e^{log(t)·B} with the principal scalar
/// logarithm; t must avoid the closed negative real axis.
pub fn scalar_matrix_exp(t: Complex64, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    assert!(b.is_square());
    if t.im == 0.0 && t.re <= 0.0 {
        return Err(Error::DomainError { offending: vec![t] });
    }
    Ok(expm(&b.scale(t.ln())))
}

/// Truncated power series Σ_{k<terms} (log(A)·B)ᵏ/k!. Intended for
/// ‖log(A)·B‖_F < 1 where 30 terms reach full precision.
pub fn series_oracle(pair: &MatrixPair, terms: usize) -> Result<ComplexMatrix> {
    let n = pair.dim();
    let m = logm(pair.base())?.matmul(pair.exponent());
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..terms {
        term = term.matmul(&m).scale_re(1.0 / k as f64);
        sum = &sum + &term;
    }
    Ok(sum)
}

/// Closed-form A^B for the normal base A = [[a, b], [−b, a]] and arbitrary
/// 2×2 exponent B, via the explicit 2×2 exponential
///
/// ```text
/// e^M = e^{(m₁₁+m₂₂)/2}/Ω · [[Ω·cosh(Ω/2) + (m₁₁−m₂₂)·sinh(Ω/2), 2m₁₂·sinh(Ω/2)],
///                            [2m₂₁·sinh(Ω/2), Ω·cosh(Ω/2) + (m₂₂−m₁₁)·sinh(Ω/2)]]
/// ```
///
/// with Ω = √((m₁₁−m₂₂)² + 4m₁₂m₂₁) (principal complex root; the formula is
/// analytic in Ω²) and M = log(A)·B built from r = √(a²+b²), θ = atan2(b, a):
/// log(A) = [[log r, θ], [−θ, log r]]. The Ω → 0 double root is the removable
/// limit sinh(Ω/2)/Ω → 1/2.
pub fn closed_form_2x2(a: f64, b: f64, exponent: &ComplexMatrix) -> Result<ComplexMatrix> {
    assert!(exponent.rows() == 2 && exponent.cols() == 2);
    if b == 0.0 && a <= 0.0 {
        return Err(Error::DomainError { offending: vec![Complex64::new(a, b)] });
    }
    let r = a.hypot(b);
    let theta = b.atan2(a);
    let log_r = r.ln();

    let (alpha, beta) = (exponent[(0, 0)], exponent[(0, 1)]);
    let (gamma, delta) = (exponent[(1, 0)], exponent[(1, 1)]);

    // M = log(A)·B entrywise.
    let m11 = alpha * log_r + gamma * theta;
    let m12 = beta * log_r + delta * theta;
    let m21 = gamma * log_r - alpha * theta;
    let m22 = delta * log_r - beta * theta;

    let omega = ((m11 - m22) * (m11 - m22) + 4.0 * m12 * m21).sqrt();
    let scale = ((m11 + m22) * 0.5).exp();
    // cosh(Ω/2) and sinh(Ω/2)/Ω, the latter through its series near zero.
    let half = omega * 0.5;
    let cosh_half = half.cosh();
    let sinh_ratio = if omega.norm() < 1e-4 {
        // sinh(x)/2x = 1/2·(1 + x²/6 + x⁴/120) with x = Ω/2.
        let x2 = half * half;
        (Complex64::ONE + x2 / 6.0 + x2 * x2 / 120.0) * 0.5
    } else {
        half.sinh() / omega
    };

    let mut out = ComplexMatrix::zeros(2, 2);
    out[(0, 0)] = scale * (cosh_half + (m11 - m22) * sinh_ratio);
    out[(0, 1)] = scale * 2.0 * m12 * sinh_ratio;
    out[(1, 0)] = scale * 2.0 * m21 * sinh_ratio;
    out[(1, 1)] = scale * (cosh_half + (m22 - m11) * sinh_ratio);
    Ok(out)
}

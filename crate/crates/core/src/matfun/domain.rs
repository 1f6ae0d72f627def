// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, ComplexMatrix};
use num_complex::Complex64;

/// Near-miss tolerance: eigenvalues within `DOMAIN_REL_TOL·‖A‖_F` of the
/// closed negative real axis are rejected rather than risk a wrong branch.
pub const DOMAIN_REL_TOL: f64 = 1e-12;

/// A square matrix whose spectrum has been verified to avoid the closed
/// negative real axis, the domain of the principal logarithm.
#[derive(Debug, Clone)]
pub struct DomainCheckedMatrix {
    matrix: ComplexMatrix,
}

impl DomainCheckedMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The conjugate transpose stays domain-valid: its spectrum is the
    /// complex conjugate of the original, and ℝ₀⁻ is conjugation-invariant.
    pub fn conj_transpose(&self) -> DomainCheckedMatrix {
        DomainCheckedMatrix { matrix: self.matrix.conj_transpose() }
    }

    /// Wraps a matrix whose domain validity is guaranteed by construction
    /// (block upper-triangular matrices sharing a validated spectrum). Not a
    /// substitute for [`validate_domain`] on user input.
    pub(crate) fn assume_validated(matrix: ComplexMatrix) -> DomainCheckedMatrix {
        debug_assert!(matrix.is_square());
        DomainCheckedMatrix { matrix }
    }
}

/// Distance from z to the closed negative real axis ℝ₀⁻.
fn dist_to_negative_axis(z: Complex64) -> f64 {
    if z.re <= 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

/// Verifies that no eigenvalue of A lies on or near ℝ₀⁻ (requires n ≤ 64).
pub fn validate_domain(a: &ComplexMatrix) -> Result<DomainCheckedMatrix> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", a.rows(), a.cols()),
        });
    }
    let threshold = DOMAIN_REL_TOL * a.fro_norm();
    let spectrum = eigenvalues(a)?;
    let offending: Vec<Complex64> = spectrum
        .values()
        .iter()
        .copied()
        .filter(|&z| dist_to_negative_axis(z) <= threshold)
        .collect();
    if offending.is_empty() {
        Ok(DomainCheckedMatrix { matrix: a.clone() })
    } else {
        Err(Error::DomainError { offending })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::linalg::testutil::{rand_matrix, Xorshift64Star};

    #[test]
    fn negative_eigenvalue_rejected() {
        let a = ComplexMatrix::diag(&[c(-1.0), c(2.0)]);
        assert!(matches!(validate_domain(&a), Err(Error::DomainError { .. })));
    }

    #[test]
    fn zero_eigenvalue_rejected() {
        // The closed axis includes the origin.
        let a = ComplexMatrix::diag(&[c(0.0), c(2.0)]);
        assert!(matches!(validate_domain(&a), Err(Error::DomainError { .. })));
    }

    #[test]
    fn near_identity_accepted() {
        let mut rng = Xorshift64Star::new(9);
        let r = rand_matrix(6, 6, &mut rng);
        let a = &ComplexMatrix::identity(6) + &r.scale_re(0.1 / r.fro_norm());
        assert!(validate_domain(&a).is_ok());
    }

    #[test]
    fn conj_transpose_preserves_validation() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| {
            Complex64::new(if i == j { 2.0 } else { 0.1 }, 0.3 * (i as f64 - j as f64))
        });
        let checked = validate_domain(&a).unwrap();
        let adj = checked.conj_transpose();
        assert_eq!(adj.matrix(), &a.conj_transpose());
    }
}

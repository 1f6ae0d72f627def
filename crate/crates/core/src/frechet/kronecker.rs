// SPDX-License-Identifier: Apache-2.0

//! Explicit Kronecker matrices of the Fréchet operators.
//!
//! The reference construction is column-by-column: column j is the vec of the
//! operator applied to the j-th canonical direction. The closed Kronecker
//! formulas (ψ of a Kronecker sum for K_exp, the resolvent integral for
//! K_log) are independent cross-check routes, never the reference.

use crate::error::{Error, Result};
use crate::linalg::{inverse, ComplexMatrix};
use crate::matfun::{expm, DomainCheckedMatrix};
use crate::quad::gauss_legendre_01;

use super::{frechet_exp, frechet_log, DirectionPair, MmexpDerivative};

use num_complex::Complex64;

/// Which operator the Kronecker matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KroneckerKind {
    /// K_f(A,B): n² × 2n², acting on stacked [vec E; vec F].
    Full,
    /// K_exp(A): n² × n².
    Exp,
    /// K_log(A): n² × n².
    Log,
}

/// Explicit matrix of a Fréchet operator in the vec basis.
#[derive(Debug, Clone)]
pub struct FrechetKroneckerMatrix {
    matrix: ComplexMatrix,
    kind: KroneckerKind,
    dim: usize,
}

impl FrechetKroneckerMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> KroneckerKind {
        self.kind
    }

    /// Dimension n of the underlying operand matrices.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Applies the matrix to a stacked direction vector.
    pub fn apply_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.matrix.cols());
        let mut out = vec![Complex64::ZERO; self.matrix.rows()];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for (j, &x) in v.iter().enumerate() {
                acc += self.matrix[(i, j)] * x;
            }
            *slot = acc;
        }
        out
    }

    /// Applies K_f to a direction pair; only valid for [`KroneckerKind::Full`].
    pub fn apply_pair(&self, pair: &DirectionPair) -> Vec<Complex64> {
        assert_eq!(self.kind, KroneckerKind::Full);
        let mut v = pair.e().vec();
        v.extend(pair.f().vec());
        self.apply_vec(&v)
    }
}

/// Canonical direction: the matrix with a one at vec-position j, zero elsewhere.
fn canonical(n: usize, j: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(j % n, j / n)] = Complex64::ONE;
    m
}

fn check_dim(n: usize, cap: usize, what: &str) -> Result<()> {
    if n > cap {
        return Err(Error::PreconditionFailed(format!("{what} supports n <= {cap}, got {n}")));
    }
    Ok(())
}

/// Builds columns in parallel; each column is an independent pure evaluation,
/// so the result is deterministic regardless of thread schedule.
fn build_columns<F>(rows: usize, cols: usize, eval: F) -> Result<ComplexMatrix>
where
    F: Fn(usize) -> Result<Vec<Complex64>> + Sync,
{
    let threads = std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1);
    let threads = threads.min(cols).max(1);
    let computed: Vec<Result<Vec<Complex64>>> = if threads == 1 {
        (0..cols).map(&eval).collect()
    } else {
        let mut slots: Vec<Option<Result<Vec<Complex64>>>> = (0..cols).map(|_| None).collect();
        std::thread::scope(|scope| {
            for (t, chunk) in slots.chunks_mut(cols.div_ceil(threads)).enumerate() {
                let eval = &eval;
                let base = t * cols.div_ceil(threads);
                scope.spawn(move || {
                    for (off, slot) in chunk.iter_mut().enumerate() {
                        *slot = Some(eval(base + off));
                    }
                });
            }
        });
        slots.into_iter().map(|s| s.expect("column computed")).collect()
    };
    let mut k = ComplexMatrix::zeros(rows, cols);
    for (j, col) in computed.into_iter().enumerate() {
        let col = col?;
        assert_eq!(col.len(), rows);
        for (i, &z) in col.iter().enumerate() {
            k[(i, j)] = z;
        }
    }
    Ok(k)
}

/// K_f(A,B): columns are vec(L_f) over the 2n² canonical direction pairs.
/// O(n⁵) work; capped at n ≤ 16.
pub fn build_k_f(a: &DomainCheckedMatrix, b: &ComplexMatrix) -> Result<FrechetKroneckerMatrix> {
    let n = a.dim();
    check_dim(n, 16, "build_k_f")?;
    let op = MmexpDerivative::new(a, b)?;
    let nn = n * n;
    let zero = ComplexMatrix::zeros(n, n);
    let matrix = build_columns(nn, 2 * nn, |j| {
        let col = if j < nn {
            op.apply(&canonical(n, j), &zero)?
        } else {
            op.apply(&zero, &canonical(n, j - nn))?
        };
        Ok(col.vec())
    })?;
    Ok(FrechetKroneckerMatrix { matrix, kind: KroneckerKind::Full, dim: n })
}

/// Column-by-column K_exp(A) via the block route (n ≤ 16).
pub fn build_k_exp(a: &ComplexMatrix) -> Result<FrechetKroneckerMatrix> {
    assert!(a.is_square());
    let n = a.rows();
    check_dim(n, 16, "build_k_exp")?;
    let nn = n * n;
    let matrix = build_columns(nn, nn, |j| Ok(frechet_exp(a, &canonical(n, j)).vec()))?;
    Ok(FrechetKroneckerMatrix { matrix, kind: KroneckerKind::Exp, dim: n })
}

/// Column-by-column K_log(A) via the block route (n ≤ 16).
pub fn build_k_log(a: &DomainCheckedMatrix) -> Result<FrechetKroneckerMatrix> {
    let n = a.dim();
    check_dim(n, 16, "build_k_log")?;
    let nn = n * n;
    let matrix = build_columns(nn, nn, |j| Ok(frechet_log(a, &canonical(n, j))?.vec()))?;
    Ok(FrechetKroneckerMatrix { matrix, kind: KroneckerKind::Log, dim: n })
}

/// K_exp(A) = (I ⊗ e^A)·ψ(Aᵀ ⊕ (−A)) with ψ(x) = (e^x − 1)/x, evaluated by a
/// scaled Taylor series. Cross-check scale only (n ≤ 4: the ψ argument is
/// n²×n²).
pub fn build_k_exp_kron(a: &ComplexMatrix) -> Result<FrechetKroneckerMatrix> {
    assert!(a.is_square());
    let n = a.rows();
    check_dim(n, 4, "build_k_exp_kron")?;
    let eye = ComplexMatrix::identity(n);
    // Kronecker sum Aᵀ ⊕ (−A) = Aᵀ⊗I − I⊗A.
    let ksum = &a.transpose().kron(&eye) - &eye.kron(a);
    let psi = psi_matrix(&ksum);
    let matrix = eye.kron(&expm(a)).matmul(&psi);
    Ok(FrechetKroneckerMatrix { matrix, kind: KroneckerKind::Exp, dim: n })
}

/// ψ(X) = Σ_{k≥0} Xᵏ/(k+1)!, computed from the Taylor series after scaling
/// ‖X‖₁ ≤ 1/2 and unscaled through ψ(2x) = ψ(x)·(e^x + 1)/2. The removable
/// singularity at 0 needs no special casing: ψ(0) = I falls out of the series.
fn psi_matrix(x: &ComplexMatrix) -> ComplexMatrix {
    let m = x.rows();
    let eye = ComplexMatrix::identity(m);
    let norm = x.one_norm();
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = x.scale_re(0.5f64.powi(s as i32));

    let mut sum = eye.clone();
    let mut term = eye.clone();
    for k in 1..=24 {
        term = term.matmul(&scaled).scale_re(1.0 / (k as f64 + 1.0));
        sum = &sum + &term;
        if term.one_norm() <= f64::EPSILON * sum.one_norm() {
            break;
        }
    }

    let mut psi = sum;
    let mut exp_scaled = expm(&scaled);
    for _ in 0..s {
        psi = psi.matmul(&(&exp_scaled + &eye)).scale_re(0.5);
        exp_scaled = exp_scaled.matmul(&exp_scaled);
    }
    psi
}

/// K_log(A) = ∫₀¹ (t(A−I)+I)⁻ᵀ ⊗ (t(A−I)+I)⁻¹ dt by adaptive Gauss–Legendre
/// quadrature (nodes doubling 8 → 128). Cross-check scale only (n ≤ 8).
pub fn build_k_log_quad(a: &DomainCheckedMatrix) -> Result<FrechetKroneckerMatrix> {
    let n = a.dim();
    check_dim(n, 8, "build_k_log_quad")?;
    let eye = ComplexMatrix::identity(n);
    let shift = a.matrix() - &eye;

    let rule = |m: usize| -> Result<ComplexMatrix> {
        let (nodes, weights) = gauss_legendre_01(m);
        let mut acc = ComplexMatrix::zeros(n * n, n * n);
        for (&t, &w) in nodes.iter().zip(&weights) {
            let resolvent = inverse(&(&eye + &shift.scale_re(t)))?;
            acc = &acc + &resolvent.transpose().kron(&resolvent).scale_re(w);
        }
        Ok(acc)
    };

    let mut prev = rule(8)?;
    for m in [16usize, 32, 64, 128] {
        let cur = rule(m)?;
        let rel = (&cur - &prev).fro_norm() / cur.fro_norm().max(f64::MIN_POSITIVE);
        prev = cur;
        if rel < 1e-10 {
            break;
        }
    }
    Ok(FrechetKroneckerMatrix { matrix: prev, kind: KroneckerKind::Log, dim: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::linalg::testutil::{rand_domain_valid, rand_matrix, Xorshift64Star};
    use crate::matfun::validate_domain;

    #[test]
    fn k_f_at_identity_base_is_bt_kron_i() {
        let mut rng = Xorshift64Star::new(81);
        let n = 3;
        let b = rand_matrix(n, n, &mut rng);
        let chk = validate_domain(&ComplexMatrix::identity(n)).unwrap();
        let k = build_k_f(&chk, &b).unwrap();
        let bt_kron_i = b.transpose().kron(&ComplexMatrix::identity(n));
        let left = k.matrix().block(0, 0, n * n, n * n);
        let right = k.matrix().block(0, n * n, n * n, n * n);
        assert!((&left - &bt_kron_i).fro_norm() <= 1e-10 * bt_kron_i.fro_norm());
        assert!(right.fro_norm() <= 1e-10 * bt_kron_i.fro_norm());
    }

    #[test]
    fn k_f_scalar_row_vector() {
        // n=1: K_f(a,b) = a^b · [b/a, log a].
        let (a, b) = (2.0f64, 1.5f64);
        let chk = validate_domain(&ComplexMatrix::diag(&[c(a)])).unwrap();
        let k = build_k_f(&chk, &ComplexMatrix::diag(&[c(b)])).unwrap();
        let ab = a.powf(b);
        assert!((k.matrix()[(0, 0)] - c(ab * b / a)).norm() < 1e-12 * ab);
        assert!((k.matrix()[(0, 1)] - c(ab * a.ln())).norm() < 1e-12 * ab);
    }

    #[test]
    fn k_f_vec_identity_random() {
        let mut rng = Xorshift64Star::new(83);
        let a = rand_domain_valid(3, &mut rng);
        let b = rand_matrix(3, 3, &mut rng);
        let chk = validate_domain(&a).unwrap();
        let op = MmexpDerivative::new(&chk, &b).unwrap();
        let k = build_k_f(&chk, &b).unwrap();
        for _ in 0..5 {
            let e = rand_matrix(3, 3, &mut rng);
            let f = rand_matrix(3, 3, &mut rng);
            let direct = op.apply(&e, &f).unwrap().vec();
            let via_k = k.apply_pair(&DirectionPair::new(e, f).unwrap());
            let diff: f64 = direct
                .iter()
                .zip(&via_k)
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let scale: f64 = direct.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!(diff <= 1e-10 * scale.max(1.0), "vec identity violated: {diff:.3e}");
        }
    }

    #[test]
    fn k_exp_kron_at_zero_is_identity() {
        let k = build_k_exp_kron(&ComplexMatrix::zeros(2, 2)).unwrap();
        assert!((k.matrix() - &ComplexMatrix::identity(4)).fro_norm() < 1e-13);
    }

    #[test]
    fn k_exp_kron_scalar() {
        // n=1: K_exp(a) = e^a (L_exp(a; e) = e^a·e).
        let k = build_k_exp_kron(&ComplexMatrix::diag(&[c(1.0)])).unwrap();
        assert!((k.matrix()[(0, 0)] - c(std::f64::consts::E)).norm() < 1e-13);
    }

    #[test]
    fn k_exp_routes_agree() {
        let mut rng = Xorshift64Star::new(85);
        for _ in 0..3 {
            let a = rand_matrix(2, 2, &mut rng);
            let cols = build_k_exp(&a).unwrap();
            let kron = build_k_exp_kron(&a).unwrap();
            let rel =
                (cols.matrix() - kron.matrix()).fro_norm() / cols.matrix().fro_norm();
            assert!(rel <= 1e-8, "K_exp route disagreement {rel:.3e}");
        }
        // Also exercise a norm large enough to force psi unscaling.
        let big = rand_matrix(2, 2, &mut rng).scale_re(4.0);
        let cols = build_k_exp(&big).unwrap();
        let kron = build_k_exp_kron(&big).unwrap();
        let rel = (cols.matrix() - kron.matrix()).fro_norm() / cols.matrix().fro_norm();
        assert!(rel <= 1e-8, "scaled K_exp route disagreement {rel:.3e}");
    }

    #[test]
    fn k_log_at_identity() {
        let chk = validate_domain(&ComplexMatrix::identity(2)).unwrap();
        let k = build_k_log_quad(&chk).unwrap();
        assert!((k.matrix() - &ComplexMatrix::identity(4)).fro_norm() < 1e-12);
    }

    #[test]
    fn k_log_scalar_integral() {
        // n=1, a=2: ∫₀¹ (1+t)⁻² dt = 1/2.
        let chk = validate_domain(&ComplexMatrix::diag(&[c(2.0)])).unwrap();
        let k = build_k_log_quad(&chk).unwrap();
        assert!((k.matrix()[(0, 0)] - c(0.5)).norm() < 1e-12);
    }

    #[test]
    fn k_log_routes_agree() {
        let mut rng = Xorshift64Star::new(87);
        let a = rand_domain_valid(3, &mut rng);
        let chk = validate_domain(&a).unwrap();
        let cols = build_k_log(&chk).unwrap();
        let quad = build_k_log_quad(&chk).unwrap();
        let rel = (cols.matrix() - quad.matrix()).fro_norm() / cols.matrix().fro_norm();
        assert!(rel <= 1e-8, "K_log route disagreement {rel:.3e}");
    }

    #[test]
    fn dimension_caps() {
        let big = ComplexMatrix::identity(17);
        let chk = DomainCheckedMatrix::assume_validated(big.clone());
        assert!(matches!(build_k_f(&chk, &big), Err(Error::PreconditionFailed(_))));
        assert!(matches!(build_k_exp_kron(&ComplexMatrix::identity(5)), Err(Error::PreconditionFailed(_))));
        let nine = DomainCheckedMatrix::assume_validated(ComplexMatrix::identity(9));
        assert!(matches!(build_k_log_quad(&nine), Err(Error::PreconditionFailed(_))));
    }
}

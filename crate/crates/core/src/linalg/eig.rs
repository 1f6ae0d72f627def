// SPDX-License-Identifier: Apache-2.0

//! Validation-grade eigenvalue solver: Householder reduction to Hessenberg
//! form followed by explicitly shifted QR with complex Givens rotations.
//!
//! Production paths never need eigenvalues; this routine backs domain
//! validation and spectrum tests, so it favors simplicity over deflation
//! tricks. Capped at `QR_SWEEP_FACTOR · n` sweeps.

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use num_complex::Complex64;

/// Maximum matrix dimension accepted by [`eigenvalues`].
pub const MAX_EIG_DIM: usize = 64;

/// Sweep cap multiplier: the iteration aborts after `100·n` QR sweeps.
pub const QR_SWEEP_FACTOR: usize = 100;

/// Unordered eigenvalue multiset of a square matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(values: Vec<Complex64>) -> Self {
        Spectrum { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Canonical ordering for multiset comparison: by real part, then imaginary.
    pub fn sorted(&self) -> Vec<Complex64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    /// Largest pairwise distance under a greedy closest-first matching of the
    /// two (canonically sorted) multisets. Plain zip after sorting is unstable
    /// when real parts tie within rounding (conjugate pairs), so matching is
    /// done by distance.
    pub fn multiset_distance(&self, other: &Spectrum) -> f64 {
        assert_eq!(self.len(), other.len(), "spectra of different sizes");
        let a = self.sorted();
        let mut b = other.sorted();
        let mut worst = 0.0f64;
        for &x in &a {
            let (j, d) = b
                .iter()
                .enumerate()
                .map(|(j, &y)| (j, (x - y).norm()))
                .min_by(|p, q| p.1.total_cmp(&q.1))
                .expect("nonempty");
            worst = worst.max(d);
            b.swap_remove(j);
        }
        worst
    }
}

/// Reduces A to upper Hessenberg form by unitary similarity (in place copy).
fn hessenberg(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let mut h = a.clone();
    if n < 3 {
        return h;
    }
    let mut v = vec![Complex64::ZERO; n];
    for k in 0..n - 2 {
        let mut norm_sq = 0.0;
        for i in k + 1..n {
            norm_sq += h[(i, k)].norm_sqr();
        }
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0 == Complex64::ZERO { Complex64::ONE } else { x0 / x0.norm() };
        // v = x + phase·‖x‖·e1 avoids cancellation in the leading entry.
        let alpha = -phase * norm;
        let mut vsq = 0.0;
        for (i, slot) in v.iter_mut().enumerate().take(n).skip(k + 1) {
            *slot = h[(i, k)];
        }
        v[k + 1] -= alpha;
        for vi in v.iter().take(n).skip(k + 1) {
            vsq += vi.norm_sqr();
        }
        if vsq == 0.0 {
            continue;
        }
        let beta = 2.0 / vsq;
        // Left multiply rows k+1..n by P = I - beta·v·v*.
        for j in k..n {
            let mut dot = Complex64::ZERO;
            for i in k + 1..n {
                dot += v[i].conj() * h[(i, j)];
            }
            dot *= beta;
            for i in k + 1..n {
                let vi = v[i];
                h[(i, j)] -= vi * dot;
            }
        }
        // Right multiply columns k+1..n.
        for i in 0..n {
            let mut dot = Complex64::ZERO;
            for j in k + 1..n {
                dot += h[(i, j)] * v[j];
            }
            dot *= beta;
            for j in k + 1..n {
                h[(i, j)] -= dot * v[j].conj();
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = Complex64::ZERO;
        }
    }
    h
}

/// Complex Givens rotation G = [[c, s], [-s̄, c]] (c real) with G·(f,g)ᵀ = (r,0)ᵀ.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    if g == Complex64::ZERO {
        return (1.0, Complex64::ZERO);
    }
    let d = (f.norm_sqr() + g.norm_sqr()).sqrt();
    if f == Complex64::ZERO {
        return (0.0, g.conj() / g.norm());
    }
    let c = f.norm() / d;
    let s = (f / f.norm()) * g.conj() / d;
    (c, s)
}

/// Eigenvalues of two-by-two [[a, b], [c, d]]; the one nearer `d` first.
fn eig2(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * cc;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        (l1, l2)
    } else {
        (l2, l1)
    }
}

/// One explicitly shifted QR sweep on the Hessenberg window `w`.
fn qr_sweep(w: &mut [Complex64], m: usize, shift: Complex64) {
    let idx = |i: usize, j: usize| i * m + j;
    for i in 0..m {
        w[idx(i, i)] -= shift;
    }
    let mut rots = Vec::with_capacity(m - 1);
    for k in 0..m - 1 {
        let (c, s) = givens(w[idx(k, k)], w[idx(k + 1, k)]);
        for j in k..m {
            let top = w[idx(k, j)];
            let bot = w[idx(k + 1, j)];
            w[idx(k, j)] = top * c + bot * s;
            w[idx(k + 1, j)] = -s.conj() * top + bot * c;
        }
        w[idx(k + 1, k)] = Complex64::ZERO;
        rots.push((c, s));
    }
    // R·Q with Q = G0*·G1*···; right-multiplying by Gk* touches columns k, k+1.
    for (k, &(c, s)) in rots.iter().enumerate() {
        for i in 0..(k + 2).min(m) {
            let left = w[idx(i, k)];
            let right = w[idx(i, k + 1)];
            w[idx(i, k)] = left * c + right * s.conj();
            w[idx(i, k + 1)] = -left * s + right * c;
        }
    }
    for i in 0..m {
        w[idx(i, i)] += shift;
    }
}

/// Eigenvalue multiset of a square matrix with `n ≤ 64`.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Spectrum> {
    assert!(a.is_square(), "eigenvalues requires a square matrix");
    let n = a.rows();
    if n > MAX_EIG_DIM {
        return Err(Error::PreconditionFailed(format!(
            "eigenvalues supports n <= {MAX_EIG_DIM}, got {n}"
        )));
    }
    let scale = a.fro_norm();
    let h = hessenberg(a);
    let mut w: Vec<Complex64> = h.entries().to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    let negligible = |w: &[Complex64], i: usize| -> bool {
        let local = w[idx(i - 1, i - 1)].norm() + w[idx(i, i)].norm();
        let tol = if local > 0.0 { f64::EPSILON * local } else { f64::EPSILON * scale };
        w[idx(i, i - 1)].norm() <= tol
    };

    let cap = QR_SWEEP_FACTOR * n;
    let mut sweeps = 0;
    let mut stuck = 0;
    let mut hi = n - 1;
    loop {
        // Deflate converged trailing eigenvalues.
        while hi > 0 && negligible(&w, hi) {
            w[idx(hi, hi - 1)] = Complex64::ZERO;
            hi -= 1;
            stuck = 0;
        }
        if hi == 0 {
            break;
        }
        // Active window [lo, hi]: scan upward for the nearest split point.
        let mut lo = hi;
        while lo > 0 && !negligible(&w, lo) {
            lo -= 1;
        }
        if lo > 0 {
            w[idx(lo, lo - 1)] = Complex64::ZERO;
        }

        if sweeps >= cap {
            return Err(Error::NoConvergence { what: "QR eigenvalue iteration", iterations: cap });
        }
        sweeps += 1;
        stuck += 1;

        let m = hi - lo + 1;
        let shift = if stuck % 16 == 0 {
            // Exceptional shift to break limit cycles (e.g. roots-of-unity spectra).
            let sub = w[idx(hi, hi - 1)].norm();
            w[idx(hi, hi)] + Complex64::new(1.25 * sub, 0.75 * sub)
        } else if m == 2 {
            eig2(w[idx(lo, lo)], w[idx(lo, lo + 1)], w[idx(lo + 1, lo)], w[idx(lo + 1, lo + 1)]).0
        } else {
            eig2(
                w[idx(hi - 1, hi - 1)],
                w[idx(hi - 1, hi)],
                w[idx(hi, hi - 1)],
                w[idx(hi, hi)],
            )
            .0
        };

        // Copy the window out, sweep, copy back.
        let mut win = vec![Complex64::ZERO; m * m];
        for i in 0..m {
            for j in 0..m {
                win[i * m + j] = w[idx(lo + i, lo + j)];
            }
        }
        qr_sweep(&mut win, m, shift);
        for i in 0..m {
            for j in 0..m {
                w[idx(lo + i, lo + j)] = win[i * m + j];
            }
        }
    }

    let values = (0..n).map(|i| w[idx(i, i)]).collect();
    Ok(Spectrum::new(values))
}

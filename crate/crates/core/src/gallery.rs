// SPDX-License-Identifier: Apache-2.0

//! Deterministic test-matrix gallery.
//!
//! Entry formulas use 1-based indices i, j:
//!
//! * `lehmer`      — L_ij = min(i,j)/max(i,j)
//! * `hilbert`     — H_ij = 1/(i+j−1)
//! * `cauchy`      — C_ij = 1/(x_i + y_j) with x_i = i, y_j = j − 1/2
//! * `minij`       — M_ij = min(i,j)
//! * `condex-like` — I plus the strictly upper-triangular all-ones matrix:
//!   spectrum pinned at 1, condition number growing like 2ⁿ
//! * `randc`       — I + ρ·(R_re + i·R_im), entries uniform in [−1,1) from the
//!   seeded generator (row-major, real then imaginary per entry), ρ halved
//!   from 1/2 until the domain check passes
//! * `randshift`   — seeded real random matrix shifted by μI, μ doubled from 1
//!   until the domain check passes
//!
//! Every output is deterministic given (name, n, seed) and off the closed
//! negative real axis.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::matfun::validate_domain;
use crate::prng::Xorshift64Star;
use num_complex::Complex64;

/// Valid generator labels, in documentation order.
pub const GENERATOR_NAMES: [&str; 7] =
    ["lehmer", "hilbert", "cauchy", "minij", "condex-like", "randc", "randshift"];

/// Smallest supported dimension.
pub const MIN_DIM: usize = 2;

/// Largest supported dimension.
pub const MAX_DIM: usize = 32;

/// Generates the named gallery matrix. The seed only affects `randc` and
/// `randshift`.
pub fn gallery(name: &str, n: usize, seed: u64) -> Result<ComplexMatrix> {
    if !(MIN_DIM..=MAX_DIM).contains(&n) {
        return Err(Error::PreconditionFailed(format!(
            "gallery supports {MIN_DIM} <= n <= {MAX_DIM}, got {n}"
        )));
    }
    match name {
        "lehmer" => Ok(real_from_fn(n, |i, j| {
            let (lo, hi) = (i.min(j) as f64, i.max(j) as f64);
            lo / hi
        })),
        "hilbert" => Ok(real_from_fn(n, |i, j| 1.0 / ((i + j - 1) as f64))),
        "cauchy" => Ok(real_from_fn(n, |i, j| 1.0 / (i as f64 + j as f64 - 0.5))),
        "minij" => Ok(real_from_fn(n, |i, j| i.min(j) as f64)),
        "condex-like" => {
            Ok(real_from_fn(n, |i, j| if j >= i { 1.0 } else { 0.0 }))
        }
        "randc" => randc(n, seed),
        "randshift" => randshift(n, seed),
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}

/// 1-based entry formula helper.
fn real_from_fn<F: Fn(usize, usize) -> f64>(n: usize, f: F) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(f(i + 1, j + 1), 0.0))
}

fn randc(n: usize, seed: u64) -> Result<ComplexMatrix> {
    let mut rng = Xorshift64Star::new(seed);
    let noise = ComplexMatrix::from_fn(n, n, |_, _| {
        let re = rng.next_signed();
        let im = rng.next_signed();
        Complex64::new(re, im)
    });
    let mut rho = 0.5;
    for _ in 0..60 {
        let candidate = &ComplexMatrix::identity(n) + &noise.scale_re(rho);
        if validate_domain(&candidate).is_ok() {
            return Ok(candidate);
        }
        rho *= 0.5;
    }
    Err(Error::NoConvergence { what: "randc generation", iterations: 60 })
}

fn randshift(n: usize, seed: u64) -> Result<ComplexMatrix> {
    let mut rng = Xorshift64Star::new(seed);
    let base = ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(rng.next_signed(), 0.0));
    let mut mu = 1.0;
    for _ in 0..60 {
        let candidate = &base + &ComplexMatrix::identity(n).scale_re(mu);
        if validate_domain(&candidate).is_ok() {
            return Ok(candidate);
        }
        mu *= 2.0;
    }
    Err(Error::NoConvergence { what: "randshift generation", iterations: 60 })
}

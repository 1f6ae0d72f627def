// SPDX-License-Identifier: Apache-2.0

//! Matrix-matrix exponentiation toolkit.
//!
//! Computes `A^B = e^{log(A)·B}` for a square complex `A` with no eigenvalues
//! on the closed negative real axis and arbitrary square complex `B`, together
//! with the Fréchet derivative of the map `(A, B) ↦ A^B`, its adjoint, and a
//! power-method estimator for the relative condition number. An explicit
//! Kronecker-matrix construction provides the exact condition number at small
//! sizes, and an experiment harness reproduces the condition-number study on a
//! deterministic matrix gallery.

pub mod conditioning;
pub mod error;
pub mod experiment;
pub mod frechet;
pub mod gallery;
pub mod linalg;
pub mod matfun;
pub mod mmexp;
pub mod mtx;
pub mod prng;
pub mod quad;

pub use error::{Error, Result};
pub use linalg::{eigenvalues, inverse, solve, sqrtm, ComplexMatrix, Spectrum};
pub use matfun::{expm, logm, validate_domain, DomainCheckedMatrix};

// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear-algebra primitives shared by every other module:
//! products, pivoted solves, norms, Kronecker/vec calculus, eigenvalues for
//! validation, and the principal square root.

mod eig;
mod matrix;
mod solve;
mod sqrtm;

pub use eig::{eigenvalues, Spectrum, MAX_EIG_DIM, QR_SWEEP_FACTOR};
pub use matrix::ComplexMatrix;
pub use solve::{inverse, solve, LuFactors, PIVOT_REL_TOL};
pub use sqrtm::{sqrtm, SQRTM_MAX_ITER, SQRTM_TOL};

#[allow(unused_imports)] // test-only helper re-export
pub(crate) use matrix::c;

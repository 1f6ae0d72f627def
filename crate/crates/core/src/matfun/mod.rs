// SPDX-License-Identifier: Apache-2.0

//! Primary matrix functions exp and log with principal-branch domain checks.

mod domain;
mod expm;
mod logm;

pub use domain::{validate_domain, DomainCheckedMatrix, DOMAIN_REL_TOL};
pub use expm::expm;
pub use logm::{logm, LOGM_PADE_ORDER, LOGM_SQRT_THRESHOLD};

// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use std::fmt;

/// Errors produced by the toolkit.
#[derive(Debug)]
pub enum Error {
    /// A pivot underflowed the singularity threshold during factorization.
    SingularMatrix { pivot: f64, threshold: f64 },
    /// An iteration hit its cap before meeting its tolerance.
    NoConvergence { what: &'static str, iterations: usize },
    /// The matrix has an eigenvalue on or near the closed negative real axis.
    DomainError { offending: Vec<Complex64> },
    /// Matrix dimensions do not match the operation's contract.
    ShapeMismatch { expected: String, found: String },
    /// An explicit precondition of the operation does not hold.
    PreconditionFailed(String),
    /// Entries must be finite on ingestion.
    NonFiniteEntry { row: usize, col: usize },
    /// Gallery generator name not recognized.
    UnknownGenerator(String),
    /// File parsing failed.
    Parse { line: usize, message: String },
    /// Underlying I/O failure.
    Io(std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SingularMatrix { pivot, threshold } => {
                write!(f, "singular matrix: pivot {pivot:.3e} below threshold {threshold:.3e}")
            }
            Error::NoConvergence { what, iterations } => {
                write!(f, "{what} did not converge within {iterations} iterations")
            }
            Error::DomainError { offending } => {
                write!(f, "eigenvalue(s) on or near the closed negative real axis:")?;
                for z in offending {
                    write!(f, " {:.6e}{:+.6e}i", z.re, z.im)?;
                }
                Ok(())
            }
            Error::ShapeMismatch { expected, found } => {
                write!(f, "shape mismatch: expected {expected}, found {found}")
            }
            Error::PreconditionFailed(msg) => write!(f, "precondition failed: {msg}"),
            Error::NonFiniteEntry { row, col } => {
                write!(f, "non-finite entry at ({row}, {col})")
            }
            Error::UnknownGenerator(name) => write!(f, "unknown gallery generator `{name}`"),
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Matrix Market array-format reader and writer.
//!
//! Accepted header: `%%MatrixMarket matrix array {real|complex} general`.
//! Values follow in column-major order, one entry per line (two floats for a
//! complex entry). Real files are promoted to complex on ingestion. The writer
//! emits 17 significant digits, so write → read round trips are bit-faithful.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use num_complex::Complex64;
use std::fs;
use std::path::Path;

/// Formats a float with 17 significant digits (round-trip exact for f64).
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        // Avoid the noisy "0.0000000000000000e0" and keep -0 distinct from 0.
        return if x.is_sign_negative() { "-0".to_string() } else { "0".to_string() };
    }
    format!("{x:.16e}")
}

/// Writes A in Matrix Market array/complex/general format.
pub fn write_matrix(path: &Path, a: &ComplexMatrix) -> Result<()> {
    fs::write(path, render_matrix(a))?;
    Ok(())
}

/// The exact file text [`write_matrix`] produces.
pub fn render_matrix(a: &ComplexMatrix) -> String {
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix array complex general\n");
    out.push_str(&format!("{} {}\n", a.rows(), a.cols()));
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            let z = a[(i, j)];
            out.push_str(&format_g17(z.re));
            out.push(' ');
            out.push_str(&format_g17(z.im));
            out.push('\n');
        }
    }
    out
}

/// Reads a Matrix Market array file; real fields are promoted to complex.
pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = fs::read_to_string(path)?;
    parse_matrix(&text)
}

/// Parses Matrix Market array text. Errors carry 1-based line numbers.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text.lines().enumerate();

    let (_, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 5
        || !tokens[0].eq_ignore_ascii_case("%%MatrixMarket")
        || !tokens[1].eq_ignore_ascii_case("matrix")
        || !tokens[2].eq_ignore_ascii_case("array")
        || !tokens[4].eq_ignore_ascii_case("general")
    {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected `%%MatrixMarket matrix array {{real|complex}} general`, found `{header}`"
            ),
        });
    }
    let complex_field = if tokens[3].eq_ignore_ascii_case("complex") {
        true
    } else if tokens[3].eq_ignore_ascii_case("real") {
        false
    } else {
        return Err(Error::Parse {
            line: 1,
            message: format!("unsupported field `{}`; use real or complex", tokens[3]),
        });
    };

    // Skip comments and blank lines up to the size line.
    let (size_lineno, size_line) = loop {
        match lines.next() {
            Some((idx, l)) => {
                let trimmed = l.trim();
                if trimmed.is_empty() || trimmed.starts_with('%') {
                    continue;
                }
                break (idx + 1, trimmed);
            }
            None => {
                return Err(Error::Parse { line: 2, message: "missing size line".into() });
            }
        }
    };
    let dims: Vec<&str> = size_line.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(Error::Parse {
            line: size_lineno,
            message: format!("expected `rows cols`, found `{size_line}`"),
        });
    }
    let rows: usize = dims[0].parse().map_err(|_| Error::Parse {
        line: size_lineno,
        message: format!("bad row count `{}`", dims[0]),
    })?;
    let cols: usize = dims[1].parse().map_err(|_| Error::Parse {
        line: size_lineno,
        message: format!("bad column count `{}`", dims[1]),
    })?;
    if rows == 0 || cols == 0 {
        return Err(Error::Parse { line: size_lineno, message: "dimensions must be positive".into() });
    }

    let mut values = Vec::with_capacity(rows * cols);
    let mut last_line = size_lineno;
    for (idx, l) in lines {
        let lineno = idx + 1;
        last_line = lineno;
        let trimmed = l.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        if values.len() == rows * cols {
            return Err(Error::Parse {
                line: lineno,
                message: "more entries than rows*cols".into(),
            });
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        let entry = if complex_field {
            if parts.len() != 2 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected `re im`, found `{trimmed}`"),
                });
            }
            Complex64::new(parse_float(parts[0], lineno)?, parse_float(parts[1], lineno)?)
        } else {
            if parts.len() != 1 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected one real value, found `{trimmed}`"),
                });
            }
            Complex64::new(parse_float(parts[0], lineno)?, 0.0)
        };
        values.push(entry);
    }
    if values.len() != rows * cols {
        return Err(Error::Parse {
            line: last_line,
            message: format!("expected {} entries, found {}", rows * cols, values.len()),
        });
    }
    ComplexMatrix::unvec(&values, rows, cols)
}

fn parse_float(token: &str, lineno: usize) -> Result<f64> {
    let v: f64 = token.parse().map_err(|_| Error::Parse {
        line: lineno,
        message: format!("bad number `{token}`"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse { line: lineno, message: format!("non-finite value `{token}`") });
    }
    Ok(v)
}

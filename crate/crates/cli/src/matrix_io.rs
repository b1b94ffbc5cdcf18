//! Matrix and vector text/JSON formats.
//!
//! Text: one row per line, entries separated by single spaces, each with
//! 12 significant digits in plain positional notation (never scientific).
//! Magnitudes below `1e-12` print as `0.000000000000`. JSON: nested arrays
//! of rows. Both are accepted on input; blank lines and lines starting with
//! `#` are skipped in text.

use std::path::Path;

use planerot_core::{Matrix, Vector};

use crate::spec_file::{read, SpecFile};
use crate::CliError;

const ZERO: &str = "0.000000000000";

/// Formats one entry with 12 significant digits, no exponent.
pub fn format_entry(x: f64) -> String {
    if x.abs() < 1e-12 {
        return ZERO.to_string();
    }
    // `{:.11e}` rounds correctly to 12 significant digits
    let sci = format!("{:.11e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp < 0 {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    } else if exp >= 11 {
        format!("{digits}{}", "0".repeat((exp - 11) as usize))
    } else {
        let (int, frac) = digits.split_at(exp as usize + 1);
        format!("{int}.{frac}")
    };
    if x < 0.0 {
        format!("-{body}")
    } else {
        body
    }
}

/// Text form of a vector: one line.
pub fn format_vector(v: &Vector) -> String {
    v.iter()
        .map(|&x| format_entry(x))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Text form of a matrix, rows separated by newlines, no trailing newline.
pub fn format_matrix_text(m: &Matrix) -> String {
    (0..m.rows())
        .map(|i| format_vector(&m.row(i)))
        .collect::<Vec<_>>()
        .join("\n")
}

/// JSON nested-array form of a matrix.
pub fn format_matrix_json(m: &Matrix) -> String {
    serde_json::to_string(&m.to_rows()).expect("finite floats serialize")
}

/// Parses either format.
pub fn parse_matrix(text: &str) -> Result<Matrix, CliError> {
    let rows: Vec<Vec<f64>> = if text.trim_start().starts_with('[') {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?
    } else {
        parse_text_rows(text)?
    };
    Matrix::from_rows(&rows).map_err(|e| CliError::Parse(e.to_string()))
}

fn parse_text_rows(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .enumerate()
            .map(|(col, tok)| {
                tok.parse::<f64>().map_err(|_| {
                    CliError::Parse(format!(
                        "line {}, entry {}: `{tok}` is not a number",
                        lineno + 1,
                        col + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(CliError::Parse(format!(
                    "line {}: expected {first} entries, found {}",
                    lineno + 1,
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Parses `"x1,x2,..."` (commas and/or whitespace).
pub fn parse_vector(text: &str) -> Result<Vector, CliError> {
    let xs = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::Parse(format!("--vector: `{t}` is not a number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Vector::new(xs).map_err(|e| CliError::Parse(format!("--vector: {e}")))
}

/// A file handed to `verify`: either a rotation spec or a matrix.
#[derive(Debug)]
pub enum Input {
    /// JSON object: a spec file.
    Spec(SpecFile),
    /// Text or JSON array: a matrix.
    Matrix(Matrix),
}

/// Loads a matrix file.
pub fn load_matrix(path: &Path) -> Result<Matrix, CliError> {
    parse_matrix(&read(path)?)
}

/// Loads a spec or matrix file, telling them apart by the first character.
pub fn load_input(path: &Path) -> Result<Input, CliError> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        SpecFile::parse(&text).map(Input::Spec)
    } else {
        parse_matrix(&text).map(Input::Matrix)
    }
}

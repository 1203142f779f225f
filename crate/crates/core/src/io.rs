//! Text formats: single matrices as JSON objects and matrix streams as
//! JSON Lines, one matrix per line.

use std::io::Write;

use crate::algebra::DivMatrix;
use crate::error::{Error, Result};

/// Parses one matrix in the `{"beta", "rows", "cols", "data"}` form.
pub fn parse_matrix_json(text: &str) -> Result<DivMatrix> {
    Ok(serde_json::from_str(text)?)
}

/// Compact single-line JSON for a matrix, without the newline.
pub fn matrix_to_json_line(x: &DivMatrix) -> String {
    serde_json::to_string(x).expect("matrices serialize")
}

/// Parses a JSON Lines stream of matrices. Blank lines are skipped; errors
/// carry the 1-based line number.
pub fn read_matrices_jsonl(text: &str) -> Result<Vec<DivMatrix>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_matrix_json(l).map_err(|e| match e {
                Error::Parse(msg) => Error::Parse(format!("line {}: {msg}", i + 1)),
                other => Error::Parse(format!("line {}: {other}", i + 1)),
            })
        })
        .collect()
}

pub fn write_matrix_jsonl<W: Write>(out: &mut W, x: &DivMatrix) -> std::io::Result<()> {
    writeln!(out, "{}", matrix_to_json_line(x))
}

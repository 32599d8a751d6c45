//! Matrix and result serialization: CSV, a small binary matrix format, and
//! the JSON result document.
//!
//! Rows are samples in every format. CSV values are written with Rust's
//! shortest round-trip float formatting, so a CSV → binary → CSV cycle
//! preserves every bit.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::DataMatrix;
use crate::selection::SelectionResult;

/// Magic prefix of the binary matrix format.
pub const BINARY_MAGIC: &[u8; 8] = b"SUBSELv1";

/// Version of the JSON result schema.
pub const RESULT_SCHEMA: u32 = 1;

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Reads a comma-separated matrix of decimal floats, one row per line.
/// Blank lines are ignored; `has_header` skips the first non-blank line.
/// NaN and infinities are rejected, and ragged rows name the line.
pub fn read_csv(path: &Path, has_header: bool) -> Result<DataMatrix> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let reader = BufReader::new(file);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;
    let mut header_pending = has_header;
    for (line_idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| io_err(path, e))?;
        let line_no = line_idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        if header_pending {
            header_pending = false;
            continue;
        }
        let mut row = Vec::new();
        for (col_idx, field) in line.split(',').enumerate() {
            let value: f64 = field.trim().parse().map_err(|_| Error::Csv {
                path: path.to_path_buf(),
                line: line_no,
                msg: format!(
                    "column {}: cannot parse {:?} as a number",
                    col_idx + 1,
                    field.trim()
                ),
            })?;
            if !value.is_finite() {
                return Err(Error::Csv {
                    path: path.to_path_buf(),
                    line: line_no,
                    msg: format!("column {}: non-finite value {value}", col_idx + 1),
                });
            }
            row.push(value);
        }
        if let Some(w) = width {
            if row.len() != w {
                return Err(Error::Csv {
                    path: path.to_path_buf(),
                    line: line_no,
                    msg: format!("ragged row: expected {w} values, got {}", row.len()),
                });
            }
        } else {
            width = Some(row.len());
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Csv {
            path: path.to_path_buf(),
            line: 0,
            msg: "no data rows".into(),
        });
    }
    DataMatrix::from_rows(&rows)
}

/// Writes a matrix as CSV with shortest round-trip float formatting.
pub fn write_csv(a: &DataMatrix, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut out = BufWriter::new(file);
    for row in a.array().rows() {
        let line = row
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        writeln!(out, "{line}").map_err(|e| io_err(path, e))?;
    }
    out.flush().map_err(|e| io_err(path, e))
}

/// Writes one integer label per line; the sidecar for generated datasets.
pub fn write_labels(labels: &[i64], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut out = BufWriter::new(file);
    for l in labels {
        writeln!(out, "{l}").map_err(|e| io_err(path, e))?;
    }
    out.flush().map_err(|e| io_err(path, e))
}

/// Reads the binary matrix format: `SUBSELv1`, row and column counts as
/// little-endian u64, then row-major f64 payload. Truncated or oversized
/// payloads and bad magic are format errors.
pub fn read_binary(path: &Path) -> Result<DataMatrix> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let mut reader = BufReader::new(file);
    let mut bytes = Vec::new();
    reader
        .read_to_end(&mut bytes)
        .map_err(|e| io_err(path, e))?;
    let fail = |msg: String| Error::BinaryFormat {
        path: path.to_path_buf(),
        msg,
    };
    if bytes.len() < 24 {
        return Err(fail(format!("file too short ({} bytes)", bytes.len())));
    }
    if &bytes[..8] != BINARY_MAGIC {
        return Err(fail("bad magic; not a SUBSELv1 matrix file".into()));
    }
    let rows = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let cols = u64::from_le_bytes(bytes[16..24].try_into().unwrap());
    let count = rows
        .checked_mul(cols)
        .and_then(|c| c.checked_mul(8))
        .ok_or_else(|| fail("dimension overflow".into()))?;
    let expected = 24u64 + count;
    if (bytes.len() as u64) != expected {
        return Err(fail(format!(
            "payload length mismatch: expected {expected} bytes for {rows}x{cols}, got {}",
            bytes.len()
        )));
    }
    let mut values = Vec::with_capacity((rows * cols) as usize);
    for chunk in bytes[24..].chunks_exact(8) {
        values.push(f64::from_le_bytes(chunk.try_into().unwrap()));
    }
    let data = ndarray::Array2::from_shape_vec((rows as usize, cols as usize), values)
        .map_err(|e| fail(e.to_string()))?;
    DataMatrix::new(data)
}

/// Writes the binary matrix format described at [`read_binary`].
pub fn write_binary(a: &DataMatrix, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut out = BufWriter::new(file);
    out.write_all(BINARY_MAGIC).map_err(|e| io_err(path, e))?;
    out.write_all(&(a.nrows() as u64).to_le_bytes())
        .map_err(|e| io_err(path, e))?;
    out.write_all(&(a.ncols() as u64).to_le_bytes())
        .map_err(|e| io_err(path, e))?;
    for v in a.array().iter() {
        out.write_all(&v.to_le_bytes())
            .map_err(|e| io_err(path, e))?;
    }
    out.flush().map_err(|e| io_err(path, e))
}

/// On-disk form of a selection run: the result fields plus the parameters
/// that produced it, under a versioned schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub schema: u32,
    pub method: String,
    pub indices: Vec<usize>,
    pub sigmas: Vec<f64>,
    pub residual_energies: Vec<f64>,
    pub elapsed_seconds: f64,
    pub parameters: Value,
}

impl ResultFile {
    pub fn from_result(result: &SelectionResult, parameters: Value) -> Self {
        Self {
            schema: RESULT_SCHEMA,
            method: result.method.clone(),
            indices: result.indices.clone(),
            sigmas: result.sigmas.clone(),
            residual_energies: result.residual_energies.clone(),
            elapsed_seconds: result.elapsed_seconds,
            parameters,
        }
    }
}

/// Writes a result document as pretty-printed JSON. Indices keep selection
/// order; order is meaningful.
pub fn write_result(result: &ResultFile, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut out = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut out, result).map_err(|e| Error::ResultFormat {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })?;
    out.write_all(b"\n").map_err(|e| io_err(path, e))?;
    out.flush().map_err(|e| io_err(path, e))
}

/// Reads a result document back, checking the schema version.
pub fn read_result(path: &Path) -> Result<ResultFile> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let result: ResultFile =
        serde_json::from_reader(BufReader::new(file)).map_err(|e| Error::ResultFormat {
            path: path.to_path_buf(),
            msg: e.to_string(),
        })?;
    if result.schema != RESULT_SCHEMA {
        return Err(Error::ResultFormat {
            path: path.to_path_buf(),
            msg: format!(
                "unsupported schema {} (expected {RESULT_SCHEMA})",
                result.schema
            ),
        });
    }
    Ok(result)
}

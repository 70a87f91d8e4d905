//! Two-column grid tables.
//!
//! ```text
//! # step=0.001 nodes=18001
//! -8 0.000211
//! -7.999 0.000212
//! ...
//! ```
//!
//! The header names the grid step and node count; each data line holds a
//! coordinate and `|ψ|` at that node, separated by whitespace or a comma.
//! Further `#` lines are comments.

use std::io::Write;
use std::path::Path;

use pilot_overlap_core::grid::trapezoid_norm_sq;
use pilot_overlap_core::GridFunction;

/// Tables whose trapezoidal `∫ f²` is within this of 1 are renormalized;
/// anything further off is rejected.
pub const RENORMALIZE_TOLERANCE: f64 = 1e-3;

#[derive(Debug, thiserror::Error)]
pub enum GridFileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("table norm {norm} differs from 1 by {} (limit {RENORMALIZE_TOLERANCE})", (norm - 1.0).abs())]
    NotNormalized { norm: f64 },
    #[error(transparent)]
    Grid(#[from] pilot_overlap_core::Error),
}

pub fn parse_grid_file(path: impl AsRef<Path>) -> Result<GridFunction, GridFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| GridFileError::Io { path: path.display().to_string(), source })?;
    parse_grid(&text)
}

fn parse_error(line: usize, message: impl Into<String>) -> GridFileError {
    GridFileError::Parse { line, message: message.into() }
}

fn number(line: usize, token: &str) -> Result<f64, GridFileError> {
    token
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| parse_error(line, format!("invalid number '{token}'")))
}

fn parse_header(line: usize, text: &str) -> Result<(f64, usize), GridFileError> {
    let (mut step, mut nodes) = (None, None);
    for token in text.trim_start_matches('#').split_whitespace() {
        match token.split_once('=') {
            Some(("step", v)) => step = Some(number(line, v)?),
            Some(("nodes", v)) => {
                nodes = Some(v.parse::<usize>().map_err(|_| parse_error(line, format!("invalid node count '{v}'")))?)
            }
            _ => return Err(parse_error(line, format!("unexpected header token '{token}'"))),
        }
    }
    match (step, nodes) {
        (Some(s), Some(n)) => Ok((s, n)),
        _ => Err(parse_error(line, "header must give step=<step> nodes=<count>")),
    }
}

pub fn parse_grid(text: &str) -> Result<GridFunction, GridFileError> {
    let mut header = None;
    let mut coords: Vec<f64> = Vec::new();
    let mut values = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if header.is_none() {
            if !trimmed.starts_with('#') {
                return Err(parse_error(line, "missing '# step=<step> nodes=<count>' header"));
            }
            header = Some(parse_header(line, trimmed)?);
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
        if fields.len() != 2 {
            return Err(parse_error(line, format!("expected 2 columns, found {}", fields.len())));
        }
        let (q, v) = (number(line, fields[0])?, number(line, fields[1])?);
        if v < 0.0 {
            return Err(parse_error(line, format!("negative amplitude {v}")));
        }
        if let Some((step, _)) = header {
            if let Some(&q0) = coords.first() {
                let expected = q0 + coords.len() as f64 * step;
                if (q - expected).abs() > 1e-6 * step + 1e-12 * q.abs() {
                    return Err(parse_error(line, format!("coordinate {q} is off the uniform grid (expected {expected})")));
                }
            }
        }
        coords.push(q);
        values.push(v);
    }
    let Some((step, nodes)) = header else {
        return Err(parse_error(last_line.max(1), "empty grid file"));
    };
    if values.len() != nodes {
        return Err(parse_error(last_line, format!("header declares {nodes} nodes, found {}", values.len())));
    }
    if values.len() < 2 {
        return Err(parse_error(last_line, "need at least 2 nodes"));
    }
    let norm = trapezoid_norm_sq(step, &values);
    if (norm - 1.0).abs() >= RENORMALIZE_TOLERANCE {
        return Err(GridFileError::NotNormalized { norm });
    }
    Ok(GridFunction::normalized(coords[0], step, values)?)
}

pub fn write_grid(f: &GridFunction, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "# step={} nodes={}", f.step(), f.len())?;
    for (i, v) in f.values().iter().enumerate() {
        writeln!(out, "{} {}", f.node(i), v)?;
    }
    Ok(())
}

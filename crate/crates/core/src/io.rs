//! Text formats for node fields.
//!
//! Plain CSV: one line per grid row (fixed `j`, `j = 0` first), values for
//! `i = 0..nx` separated by commas.
//!
//! Field file: a one-line JSON header carrying the grid metadata, followed by
//! the plain CSV body. Floats are written in shortest round-trip form, so a
//! parsed file is bit-identical to the field that produced it.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldHeader {
    pub kind: String,
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub origin: [f64; 2],
}

impl FieldHeader {
    pub fn new(kind: &str, grid: &Grid) -> Self {
        FieldHeader {
            kind: kind.to_string(),
            nx: grid.nx,
            ny: grid.ny,
            h: grid.h,
            origin: grid.origin,
        }
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.nx, self.ny, self.h, self.origin)
    }
}

pub fn to_csv(grid: &Grid, values: &[f64]) -> String {
    assert_eq!(values.len(), grid.len(), "field length does not match grid");
    let mut s = String::with_capacity(values.len() * 8);
    for row in values.chunks(grid.nx) {
        for (k, v) in row.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            write!(s, "{v}").unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn mask_to_values(mask: &[bool]) -> Vec<f64> {
    mask.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
}

pub fn values_to_mask(values: &[f64]) -> Result<Vec<bool>> {
    values
        .iter()
        .map(|&v| match v {
            0.0 => Ok(false),
            1.0 => Ok(true),
            v => Err(Error::Parse(format!("mask entry {v} is not 0 or 1"))),
        })
        .collect()
}

/// Parses a plain CSV body with exactly `ny` rows of `nx` values.
pub fn parse_csv(text: &str, nx: usize, ny: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(nx * ny);
    let mut rows = 0;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let before = out.len();
        for tok in line.split(',') {
            let v: f64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad number {tok:?}", lineno + 1)))?;
            out.push(v);
        }
        if out.len() - before != nx {
            return Err(Error::Parse(format!(
                "line {}: expected {nx} values, found {}",
                lineno + 1,
                out.len() - before
            )));
        }
        rows += 1;
    }
    if rows != ny {
        return Err(Error::Parse(format!("expected {ny} rows, found {rows}")));
    }
    Ok(out)
}

pub fn to_field_text(kind: &str, grid: &Grid, values: &[f64]) -> String {
    let header = serde_json::to_string(&FieldHeader::new(kind, grid)).expect("header serializes");
    let mut s = header;
    s.push('\n');
    s.push_str(&to_csv(grid, values));
    s
}

pub fn parse_field_text(text: &str) -> Result<(FieldHeader, Vec<f64>)> {
    let (head, body) = text
        .split_once('\n')
        .ok_or_else(|| Error::Parse("missing header line".into()))?;
    let header: FieldHeader =
        serde_json::from_str(head).map_err(|e| Error::Parse(format!("header: {e}")))?;
    header.grid()?;
    let values = parse_csv(body, header.nx, header.ny)?;
    Ok((header, values))
}

pub fn write_field(path: &Path, kind: &str, grid: &Grid, values: &[f64]) -> Result<()> {
    std::fs::write(path, to_field_text(kind, grid, values))?;
    Ok(())
}

pub fn read_field(path: &Path) -> Result<(FieldHeader, Vec<f64>)> {
    parse_field_text(&std::fs::read_to_string(path)?)
}

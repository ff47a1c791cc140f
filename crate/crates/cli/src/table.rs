//! Deterministic CSV text: shortest round-trip floats, uppercase `NAN`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::CliError;

pub const NAN_TOKEN: &str = "NAN";

pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        NAN_TOKEN.to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "INF" } else { "-INF" }.to_string()
    } else {
        format!("{v:?}")
    }
}

/// Parses a cell written by [`fmt_f64`].
pub fn parse_f64(s: &str) -> Option<f64> {
    match s {
        NAN_TOKEN => Some(f64::NAN),
        "INF" => Some(f64::INFINITY),
        "-INF" => Some(f64::NEG_INFINITY),
        _ => s.parse().ok(),
    }
}

pub struct Table {
    columns: usize,
    text: String,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self {
            columns: header.len(),
            text,
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns, "row width must match header");
        let _ = writeln!(self.text, "{}", cells.join(","));
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, &self.text).map_err(CliError::io(path))
    }
}

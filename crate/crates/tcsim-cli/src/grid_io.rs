//! Reading and writing sweep grids.
//!
//! CSV schema: a header `<x-name>,<y-name>,value` followed by one row per
//! grid point in row-major `(y, x)` order. Values are printed with Rust's
//! shortest round-trip formatting, so parsing a written file reproduces the
//! in-memory numbers bit for bit. JSON files carry the full [`SweepGrid`]
//! including metadata.

use std::fmt::Write as _;
use std::path::Path;

use tcsim::sweep::SweepGrid;

use crate::CliError;

/// Everything the heatmap renderer needs; metadata-bearing inputs may attach
/// a title.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapData {
    pub x_name: String,
    pub y_name: String,
    pub x_values: Vec<f64>,
    pub y_values: Vec<f64>,
    /// Row-major over (y, x).
    pub values: Vec<f64>,
    pub title: Option<String>,
}

pub fn to_csv(grid: &SweepGrid) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{},{},value", grid.x_axis.name, grid.y_axis.name);
    for iy in 0..grid.y_axis.steps {
        let y = grid.y_axis.value(iy);
        for ix in 0..grid.x_axis.steps {
            let _ = writeln!(out, "{},{},{}", grid.x_axis.value(ix), y, grid.value_at(ix, iy));
        }
    }
    out
}

fn ordered_unique(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for v in values {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Parse the CSV schema back into heatmap data.
pub fn parse_csv(text: &str) -> Result<HeatmapData, CliError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::BadInput("empty grid file".into()))?;
    let names: Vec<&str> = header.split(',').collect();
    if names.len() != 3 {
        return Err(CliError::BadInput(format!(
            "expected a 3-column header, got `{header}`"
        )));
    }

    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(CliError::BadInput(format!(
                "row {}: expected 3 fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64, CliError> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::BadInput(format!("row {}: bad number `{s}`", lineno + 2)))
        };
        rows.push((parse(fields[0])?, parse(fields[1])?, parse(fields[2])?));
    }
    if rows.is_empty() {
        return Err(CliError::BadInput("grid file has no data rows".into()));
    }

    let x_values = ordered_unique(rows.iter().map(|r| r.0));
    let y_values = ordered_unique(rows.iter().map(|r| r.1));
    if x_values.len() * y_values.len() != rows.len() {
        return Err(CliError::BadInput(format!(
            "grid is not rectangular: {} x-values, {} y-values, {} rows",
            x_values.len(),
            y_values.len(),
            rows.len()
        )));
    }
    let values: Vec<f64> = rows.iter().map(|r| r.2).collect();
    if !values.iter().all(|v| v.is_finite()) {
        return Err(CliError::BadInput("grid contains non-finite values".into()));
    }
    Ok(HeatmapData {
        x_name: names[0].trim().to_string(),
        y_name: names[1].trim().to_string(),
        x_values,
        y_values,
        values,
        title: None,
    })
}

impl From<&SweepGrid> for HeatmapData {
    fn from(grid: &SweepGrid) -> Self {
        HeatmapData {
            x_name: grid.x_axis.name.clone(),
            y_name: grid.y_axis.name.clone(),
            x_values: grid.x_axis.values(),
            y_values: grid.y_axis.values(),
            values: grid.values.clone(),
            title: grid.metadata.scenario.clone(),
        }
    }
}

/// Load either grid format, deciding by the leading byte (`{` means JSON).
pub fn load_heatmap_data(path: &Path) -> Result<HeatmapData, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::BadInput(format!("cannot read {}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let grid: SweepGrid = serde_json::from_str(&text)
            .map_err(|e| CliError::BadInput(format!("invalid grid JSON: {e}")))?;
        grid.validate()
            .map_err(|e| CliError::BadInput(e.to_string()))?;
        Ok(HeatmapData::from(&grid))
    } else {
        parse_csv(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tcsim::sweep::sweep_factor;

    #[test]
    fn csv_roundtrip_is_exact() {
        let grid = sweep_factor(0.05, 7).unwrap();
        let csv = to_csv(&grid);
        let parsed = parse_csv(&csv).unwrap();
        assert_eq!(parsed.values, grid.values);
        assert_eq!(parsed.x_values, grid.x_axis.values());
        assert_eq!(parsed.x_name, "delta1");
        assert_eq!(parsed.y_name, "delta2");
    }

    #[test]
    fn csv_row_count_and_order() {
        let grid = sweep_factor(0.05, 3).unwrap();
        let csv = to_csv(&grid);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 1 + 9);
        assert_eq!(lines[0], "delta1,delta2,value");
        // row-major over (y, x): x cycles fastest
        let first: Vec<&str> = lines[1].split(',').collect();
        let second: Vec<&str> = lines[2].split(',').collect();
        assert_eq!(first[1], second[1]);
        assert_ne!(first[0], second[0]);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(parse_csv("").is_err());
        assert!(parse_csv("delta1,delta2,value\n").is_err());
        assert!(parse_csv("a,b\n1,2\n").is_err());
        assert!(parse_csv("a,b,c\n1,2\n").is_err());
        assert!(parse_csv("a,b,c\n1,2,x\n").is_err());
        // non-rectangular
        assert!(parse_csv("a,b,c\n0,0,1\n1,0,1\n0,1,1\n").is_err());
    }
}

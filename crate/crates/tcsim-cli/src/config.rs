//! Optional JSON config files mirroring the command-line flags.
//!
//! Keys use the flag names with underscores (`gt_steps`, `delta_frac`, …).
//! Explicit flags always override file values; unknown keys are rejected so
//! typos surface instead of being silently ignored.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::{CliError, OutputFormat, Preset};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub scenario: Option<String>,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub delta1: Option<f64>,
    pub delta2: Option<f64>,
    pub delta_frac: Option<f64>,
    pub kz0: Option<f64>,
    pub gt: Option<f64>,
    pub n_max: Option<usize>,
    pub r: Option<f64>,
    pub gt_max: Option<f64>,
    pub gt_steps: Option<usize>,
    pub delta_steps: Option<usize>,
    pub preset: Option<String>,
    pub output: Option<String>,
    pub format: Option<String>,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub input: Option<String>,
}

impl FileConfig {
    /// Load a config file, or return an empty config when no path is given.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::BadInput(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::BadInput(format!("invalid config {}: {e}", path.display())))
    }

    pub fn preset(&self) -> Result<Option<Preset>, CliError> {
        match self.preset.as_deref() {
            None => Ok(None),
            Some("fig2") => Ok(Some(Preset::Fig2)),
            Some("fig3a") => Ok(Some(Preset::Fig3a)),
            Some("fig3b") => Ok(Some(Preset::Fig3b)),
            Some(other) => Err(CliError::BadInput(format!(
                "unknown preset `{other}` (expected fig2, fig3a, or fig3b)"
            ))),
        }
    }

    pub fn format(&self) -> Result<Option<OutputFormat>, CliError> {
        match self.format.as_deref() {
            None => Ok(None),
            Some("csv") => Ok(Some(OutputFormat::Csv)),
            Some("json") => Ok(Some(OutputFormat::Json)),
            Some(other) => Err(CliError::BadInput(format!(
                "unknown format `{other}` (expected csv or json)"
            ))),
        }
    }

    pub fn output_path(&self) -> Option<PathBuf> {
        self.output.as_ref().map(PathBuf::from)
    }

    pub fn input_path(&self) -> Option<PathBuf> {
        self.input.as_ref().map(PathBuf::from)
    }
}

//! Implementation of the `tcsim` command-line tool: argument resolution,
//! grid file I/O, and SVG rendering. The binary in `main.rs` is a thin
//! wrapper around [`run`].

pub mod config;
pub mod grid_io;
pub mod svg;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use tcsim::model::Scenario;
use tcsim::oscillator::{com_factor, OscillatorSpec};
use tcsim::scenarios::{concurrence_for, verify_oscillator, verify_structure};
use tcsim::sweep::{sweep_concurrence, sweep_factor, SweepGrid};
use tcsim::SystemParams;

use config::FileConfig;

/// Stable process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Invalid flags, config values, or malformed input files (exit 2).
    BadInput(String),
    /// A verification check failed (exit 1).
    VerificationFailed,
    /// The filesystem refused an output (exit 3).
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::BadInput(msg) => write!(f, "{msg}"),
            CliError::VerificationFailed => write!(f, "verification failed"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::BadInput(_) => EXIT_BAD_INPUT,
            CliError::VerificationFailed => EXIT_VERIFY_FAILED,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<tcsim::Error> for CliError {
    fn from(err: tcsim::Error) -> Self {
        CliError::BadInput(err.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "tcsim",
    version,
    about = "Entanglement of two cavity-coupled atoms with a classical center-of-mass correction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the center-of-mass factor K for two plates
    Factor(FactorArgs),
    /// Evaluate one corrected concurrence point
    Concurrence(ConcurrenceArgs),
    /// Evaluate a parameter grid and write it as CSV or JSON
    Sweep(SweepArgs),
    /// Run the structural verification checks and report JSON
    Verify(VerifyArgs),
    /// Render a sweep grid file (CSV or JSON) as an SVG heatmap
    Heatmap(HeatmapArgs),
}

#[derive(Args, Debug, Default)]
pub struct FactorArgs {
    /// Relative displacement of plate 1 (0 < r < 1)
    #[arg(long)]
    pub r1: Option<f64>,
    /// Relative displacement of plate 2
    #[arg(long)]
    pub r2: Option<f64>,
    /// Initial phase of plate 1 in radians
    #[arg(long)]
    pub delta1: Option<f64>,
    /// Initial phase of plate 2 in radians
    #[arg(long)]
    pub delta2: Option<f64>,
    /// Set both phases to f·arcsin(1−r) of their plate
    #[arg(long, conflicts_with_all = ["delta1", "delta2"])]
    pub delta_frac: Option<f64>,
    /// JSON file with defaults for any flag (explicit flags win)
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct ConcurrenceArgs {
    /// Initial state: bell-vacuum or gg-one
    #[arg(long)]
    pub scenario: Option<String>,
    /// Dimensionless time g·t
    #[arg(long)]
    pub gt: Option<f64>,
    #[arg(long)]
    pub r1: Option<f64>,
    #[arg(long)]
    pub r2: Option<f64>,
    #[arg(long)]
    pub delta1: Option<f64>,
    #[arg(long)]
    pub delta2: Option<f64>,
    #[arg(long, conflicts_with_all = ["delta1", "delta2"])]
    pub delta_frac: Option<f64>,
    /// Cavity phase k·z0 in radians (the concurrence does not depend on it)
    #[arg(long)]
    pub kz0: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Factor K over (delta1, delta2) at r = 0.05, 101x101
    Fig2,
    /// Bell-vacuum corrected concurrence over (gt, delta) at r = 0.05
    Fig3a,
    /// gg-one corrected concurrence over (gt, delta) at r = 0.05
    Fig3b,
}

#[derive(Args, Debug, Default)]
pub struct SweepArgs {
    /// One-command reproduction of the reference surfaces
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Scenario for a (gt, delta) concurrence grid; omit for a
    /// (delta1, delta2) factor grid
    #[arg(long)]
    pub scenario: Option<String>,
    /// Relative displacement (both plates)
    #[arg(long)]
    pub r: Option<f64>,
    /// Upper end of the gt axis
    #[arg(long)]
    pub gt_max: Option<f64>,
    /// Points along the gt axis
    #[arg(long)]
    pub gt_steps: Option<usize>,
    /// Points along each delta axis
    #[arg(long)]
    pub delta_steps: Option<usize>,
    /// Output file path
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// csv (default) or json
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    /// Fock truncation (>= 2; 4 leaves a safety margin)
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Number of sampled gt points
    #[arg(long)]
    pub samples: Option<usize>,
    /// Tolerance applied to every check
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct HeatmapArgs {
    /// Grid file produced by `sweep` (.csv or .json)
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// SVG output path
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::BadInput(format!("missing required value for `{flag}`")))
}

/// Build one plate's spec, labeling domain errors with the plate number.
fn plate_spec(r: f64, delta: f64, plate: usize) -> Result<OscillatorSpec, CliError> {
    OscillatorSpec::from_relative(r, delta)
        .map_err(|e| CliError::BadInput(format!("plate {plate}: {e}")))
}

fn resolve_deltas(
    r1: f64,
    r2: f64,
    delta1: Option<f64>,
    delta2: Option<f64>,
    delta_frac: Option<f64>,
) -> (f64, f64) {
    match delta_frac {
        Some(f) => (f * (1.0 - r1).asin(), f * (1.0 - r2).asin()),
        None => (delta1.unwrap_or(0.0), delta2.unwrap_or(0.0)),
    }
}

fn build_plates(
    r1: Option<f64>,
    r2: Option<f64>,
    delta1: Option<f64>,
    delta2: Option<f64>,
    delta_frac: Option<f64>,
) -> Result<(OscillatorSpec, OscillatorSpec), CliError> {
    let r1 = require(r1, "--r1")?;
    let r2 = require(r2, "--r2")?;
    let (d1, d2) = resolve_deltas(r1, r2, delta1, delta2, delta_frac);
    Ok((plate_spec(r1, d1, 1)?, plate_spec(r2, d2, 2)?))
}

pub fn cmd_factor(args: FactorArgs, out: &mut impl std::io::Write) -> Result<(), CliError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let (spec1, spec2) = build_plates(
        args.r1.or(file.r1),
        args.r2.or(file.r2),
        args.delta1.or(file.delta1),
        args.delta2.or(file.delta2),
        args.delta_frac.or(file.delta_frac),
    )?;
    let factor = com_factor(&spec1, &spec2);
    let json = serde_json::to_string(&factor).expect("factor serializes");
    writeln!(out, "{json}").map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

pub fn cmd_concurrence(args: ConcurrenceArgs, out: &mut impl std::io::Write) -> Result<(), CliError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let scenario: Scenario = require(args.scenario.or(file.scenario), "--scenario")?
        .parse()
        .map_err(CliError::from)?;
    let gt = require(args.gt.or(file.gt), "--gt")?;
    let (spec1, spec2) = build_plates(
        args.r1.or(file.r1),
        args.r2.or(file.r2),
        args.delta1.or(file.delta1),
        args.delta2.or(file.delta2),
        args.delta_frac.or(file.delta_frac),
    )?;
    let kz0 = args.kz0.or(file.kz0).unwrap_or(0.0);
    let result = concurrence_for(scenario, gt, &spec1, &spec2, kz0);
    let json = serde_json::json!({
        "gt": result.gt,
        "bare": result.bare_concurrence,
        "k": result.k_factor,
        "corrected": result.corrected_concurrence,
    });
    writeln!(out, "{json}").map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

/// Three full periods of the bell-vacuum oscillation — the default gt range
/// for concurrence sweeps.
pub fn default_gt_max() -> f64 {
    3.0 * 2.0 * std::f64::consts::PI / 6f64.sqrt()
}

pub fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let preset = args.preset.or(file.preset()?);

    let mut scenario = args.scenario.or_else(|| file.scenario.clone());
    let mut r = args.r.or(file.r);
    let mut gt_steps = args.gt_steps.or(file.gt_steps);
    let mut delta_steps = args.delta_steps.or(file.delta_steps);
    match preset {
        Some(Preset::Fig2) => {
            scenario = None;
            r = r.or(Some(0.05));
            delta_steps = delta_steps.or(Some(101));
        }
        Some(Preset::Fig3a) => {
            scenario = scenario.or_else(|| Some("bell-vacuum".into()));
            r = r.or(Some(0.05));
        }
        Some(Preset::Fig3b) => {
            scenario = scenario.or_else(|| Some("gg-one".into()));
            r = r.or(Some(0.05));
        }
        None => {}
    }
    let r = r.unwrap_or(0.05);

    let grid = match scenario {
        None => sweep_factor(r, delta_steps.unwrap_or(101))?,
        Some(name) => {
            let scenario: Scenario = name.parse().map_err(CliError::from)?;
            let gt_max = args.gt_max.or(file.gt_max).unwrap_or_else(default_gt_max);
            sweep_concurrence(
                scenario,
                r,
                gt_max,
                gt_steps.take().unwrap_or(121),
                delta_steps.unwrap_or(61),
            )?
        }
    };

    let output = require(args.output.or(file.output_path()), "--output")?;
    let format = args.format.or(file.format()?).unwrap_or(OutputFormat::Csv);
    let contents = match format {
        OutputFormat::Csv => grid_io::to_csv(&grid),
        OutputFormat::Json => {
            serde_json::to_string_pretty(&grid).expect("grid serializes") + "\n"
        }
    };
    std::fs::write(&output, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", output.display())))?;
    Ok(())
}

pub fn cmd_verify(args: VerifyArgs, out: &mut impl std::io::Write) -> Result<(), CliError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let n_max = args.n_max.or(file.n_max).unwrap_or(4);
    let samples = args.samples.or(file.samples).unwrap_or(50);
    let tol = args.tol.or(file.tol).unwrap_or(1e-9);
    let params = SystemParams::new(1.0, 0.0, 1.0, n_max)?;
    let report = verify_structure(&params, samples, tol)?.merge(verify_oscillator(samples, tol));
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    writeln!(out, "{json}").map_err(|e| CliError::Io(e.to_string()))?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

pub fn cmd_heatmap(args: HeatmapArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let input = require(args.input.or(file.input_path()), "--input")?;
    let output = require(args.output.or(file.output_path()), "--output")?;
    let data = grid_io::load_heatmap_data(&input)?;
    let rendered = svg::render_heatmap(&data);
    std::fs::write(&output, rendered)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", output.display())))?;
    Ok(())
}

/// Dispatch a parsed command line. Returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let mut stdout = std::io::stdout();
    let result = match cli.command {
        Command::Factor(args) => cmd_factor(args, &mut stdout),
        Command::Concurrence(args) => cmd_concurrence(args, &mut stdout),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args, &mut stdout),
        Command::Heatmap(args) => cmd_heatmap(args),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

/// Write a grid the way `sweep` does — shared with tests.
pub fn write_grid(grid: &SweepGrid, path: &Path, format: OutputFormat) -> Result<(), CliError> {
    let contents = match format {
        OutputFormat::Csv => grid_io::to_csv(grid),
        OutputFormat::Json => serde_json::to_string_pretty(grid).expect("grid serializes") + "\n",
    };
    std::fs::write(path, contents).map_err(|e| CliError::Io(e.to_string()))
}

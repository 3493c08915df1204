//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::models::{build_geometry, CheckConfig, REGISTRY};
use crate::suite::{algebra_suite, geometry_suite, point_dump, suite_all, PointQuery, SuiteReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "twistor",
    version,
    about = "Verification suites for Lorentzian twistor spinors"
)]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Override every default tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Lattice points per active axis.
    #[arg(long, global = true, default_value_t = 3)]
    pub grid: usize,
    /// Seeded random points for curvature-heavy checks.
    #[arg(long, global = true, default_value_t = 3)]
    pub spot: usize,
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Params file: {"name": string, "params": {...}}.
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,
    /// Print only the summary line.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Clifford and spinor-invariant checks for one dimension (2..=8).
    Algebra { n: usize },
    /// Expectation checks of a registered geometry.
    Geometry { name: Option<String> },
    /// Single-point computation dumped as JSON.
    Point {
        name: Option<String>,
        /// Comma-separated coordinates; defaults to the chart center.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<f64>,
        #[arg(long, value_enum)]
        what: PointQuery,
        /// Restrict to one bundled spinor.
        #[arg(long)]
        spinor: Option<String>,
        /// Vector field for the Killing analysis.
        #[arg(long)]
        vector: Option<String>,
    },
    /// Run a named suite.
    Suite {
        #[arg(value_enum)]
        which: SuiteName,
    },
    /// List registered geometries.
    List,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SuiteName {
    All,
}

#[derive(Debug, Deserialize)]
struct ParamsFile {
    name: Option<String>,
    #[serde(default)]
    params: Value,
}

fn read_params(path: &Path) -> Result<ParamsFile> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)?;
    if !v.is_object() {
        return Err(Error::InvalidParams("params file must hold a JSON object".into()));
    }
    Ok(serde_json::from_value(v)?)
}

fn resolve(name: Option<String>, params: Option<&Path>) -> Result<(String, Value)> {
    let file = params.map(read_params).transpose()?;
    let (fname, p) = match file {
        Some(f) => (f.name, f.params),
        None => (None, Value::Null),
    };
    let name = name
        .or(fname)
        .ok_or_else(|| Error::InvalidParams("no geometry name given".into()))?;
    Ok((name, p))
}

/// Errors caused by the invocation rather than by a failed check.
pub fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::DimensionOutOfRange(_)
            | Error::UnknownGeometry { .. }
            | Error::InvalidParams(_)
            | Error::OutsideDomain
            | Error::DimensionMismatch { .. }
            | Error::Io(_)
            | Error::Json(_)
    )
}

fn print_report(out: &mut impl Write, report: &SuiteReport, quiet: bool) -> std::io::Result<()> {
    if !quiet {
        for r in &report.records {
            let tag = if r.pass { "PASS" } else { "FAIL" };
            write!(
                out,
                "{tag} {:<18} {:<28} {}  residual={:.3e} tol={:.1e}",
                r.module, r.op, r.identity, r.residual, r.tolerance
            )?;
            match &r.detail {
                Some(d) => writeln!(out, "  ({d})")?,
                None => writeln!(out)?,
            }
        }
    }
    let failed = report.records.iter().filter(|r| !r.pass).count();
    writeln!(
        out,
        "{}: {} checks, {} failed, {:.2} s -> {}",
        report.geometry,
        report.records.len(),
        failed,
        report.wall_time,
        if report.pass { "PASS" } else { "FAIL" }
    )
}

fn write_json(path: &Path, v: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut impl Write) -> Result<i32> {
    let cfg = CheckConfig {
        grid: cli.grid,
        spot: cli.spot,
        seed: cli.seed,
        tol: cli.tol,
    };
    let report = match &cli.command {
        Command::List => {
            for name in REGISTRY {
                writeln!(out, "{name}")?;
            }
            return Ok(EXIT_PASS);
        }
        Command::Point {
            name,
            at,
            what,
            spinor,
            vector,
        } => {
            let (name, params) = resolve(name.clone(), cli.params.as_deref())?;
            let spec = build_geometry(&name, &params)?;
            let x = if at.is_empty() { spec.chart.center() } else { at.clone() };
            let v = point_dump(&spec, &x, *what, spinor.as_deref(), vector.as_deref())?;
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            if let Some(p) = &cli.json {
                write_json(p, &v)?;
            }
            return Ok(EXIT_PASS);
        }
        Command::Algebra { n } => algebra_suite(*n, &cfg)?,
        Command::Geometry { name } => {
            let (name, params) = resolve(name.clone(), cli.params.as_deref())?;
            geometry_suite(&name, &params, &cfg)?
        }
        Command::Suite { which: SuiteName::All } => suite_all(&cfg),
    };
    print_report(out, &report, cli.quiet)?;
    if let Some(p) = &cli.json {
        write_json(p, &report)?;
    }
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if is_usage_error(&e) {
                EXIT_USAGE
            } else {
                EXIT_FAIL
            }
        }
    }
}

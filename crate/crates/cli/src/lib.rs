//! Command-line front end: `eval`, `simulate` and `verify`.
//!
//! Exit codes: 0 on success, 1 when a check or a computation fails, 2 on usage
//! errors and parameter regimes the requested law does not cover.

pub mod args;
pub mod config;
pub mod emit;
mod eval;
mod simulate;
pub mod verify;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;
use hypstable::{Error, ProcessParams};

use args::{Cli, Command, Format, ProcessArgs};
use config::ConfigFile;
use emit::{write_output, RunReport};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Regime(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Regime(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Regime(m) => write!(f, "unsupported parameters: {m}"),
            CliError::Numeric(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Regime { requirement } => CliError::Regime(format!("this law requires {requirement}")),
            Error::Domain(_) | Error::Config(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let echo = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    match dispatch(&cli, echo) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hypstable: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, echo: String) -> Result<i32, CliError> {
    let config = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let format = config.pick(cli.format.map(format_name), "format")?.map(|s: String| parse_format(&s)).transpose()?;
    let out = cli.out.clone().or(config.get::<String>("out")?.map(Into::into));
    match &cli.command {
        Command::Eval(a) => {
            let table = eval::run(a, &config)?;
            write_output(out.as_deref(), &table.render(format.unwrap_or(Format::Csv))?)?;
            Ok(0)
        }
        Command::Simulate(a) => {
            let table = simulate::run(a, &config)?;
            write_output(out.as_deref(), &table.render(format.unwrap_or(Format::Csv))?)?;
            Ok(0)
        }
        Command::Verify(a) => {
            let start = Instant::now();
            let checks = verify::run(a, &config)?;
            let report = RunReport::new(echo, checks, start.elapsed().as_secs_f64());
            write_output(out.as_deref(), &report.render(format.unwrap_or(Format::Json)))?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAILED {}: expected {}, observed {}, tolerance {}", c.name, c.expected, c.observed, c.tolerance);
            }
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

fn format_name(f: Format) -> String {
    match f {
        Format::Csv => "csv".into(),
        Format::Json => "json".into(),
    }
}

fn parse_format(s: &str) -> Result<Format, CliError> {
    match s {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        _ => Err(CliError::Usage(format!("unknown format {s:?}"))),
    }
}

pub(crate) fn process_params(p: &ProcessArgs, config: &ConfigFile) -> Result<ProcessParams, CliError> {
    let alpha = config
        .pick(p.alpha, "alpha")?
        .ok_or_else(|| CliError::Usage("--alpha is required".into()))?;
    let dim = config
        .pick(p.dim, "dim")?
        .ok_or_else(|| CliError::Usage("--dim is required".into()))?;
    Ok(ProcessParams::new(alpha, dim)?)
}

/// Optional process parameters: `None` when neither flag nor file sets them.
pub(crate) fn maybe_process_params(p: &ProcessArgs, config: &ConfigFile) -> Result<Option<ProcessParams>, CliError> {
    let alpha: Option<f64> = config.pick(p.alpha, "alpha")?;
    let dim: Option<u32> = config.pick(p.dim, "dim")?;
    match (alpha, dim) {
        (None, None) => Ok(None),
        (Some(a), Some(d)) => Ok(Some(ProcessParams::new(a, d)?)),
        _ => Err(CliError::Usage("--alpha and --dim must be given together".into())),
    }
}

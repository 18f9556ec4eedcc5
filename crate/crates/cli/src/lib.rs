//! Command-line front end: argument definitions and command execution.
//!
//! Commands write to any `io::Write` so tests can run them in-process.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hultman::census::{hultman_census, odd_hultman_census, signed_hultman_census};
use hultman::distances::{compare, distance_distribution};
use hultman::hultman::{hultman_row, signed_hultman_row, signed_moments, unsigned_moments};
use hultman::{CensusOptions, Metric, Statistic};

pub mod output;
pub mod verify;

pub use output::Format;
pub use verify::Suite;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hultman::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed table: {0}")]
    Format(String),
}

#[derive(Debug, Parser)]
#[command(name = "hultman", version, about = "Exact cycle statistics of breakpoint graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hultman numbers from the closed formulas, as (n, k, count) rows
    Table(TableArgs),
    /// Exhaustive census of a breakpoint-graph statistic
    Census(CensusArgs),
    /// Exact mean and variance of the cycle count
    Moments(MomentsArgs),
    /// Distribution of a distance, lower bound or BFS metric
    Dist(DistArgs),
    /// A distance distribution beside the best-fitting shifted cycle distribution
    Compare(CompareArgs),
    /// Run a self-check suite; exits non-zero on any failure
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Worker threads (0 = one per core); output does not depend on it
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Run past the size guards
    #[arg(long)]
    pub force: bool,
}

impl RunArgs {
    fn options(&self) -> CensusOptions {
        CensusOptions { jobs: self.jobs, force: self.force }
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub signed: bool,
    /// Largest n
    #[arg(long = "n", alias = "max-n", default_value_t = 11)]
    pub n_max: usize,
    /// Include zero counts
    #[arg(long)]
    pub dense: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub signed: bool,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "cycles", value_parser = parse_statistic)]
    pub statistic: Statistic,
    #[arg(long)]
    pub dense: bool,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long)]
    pub signed: bool,
    /// Largest n
    #[arg(long = "n", alias = "max-n", default_value_t = 10)]
    pub n_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// bid, dcj, srd_lower, td_lower, ptd_lower, psrd_lower or a generator set
    #[arg(long, value_parser = parse_metric)]
    pub metric: Metric,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub dense: bool,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_parser = parse_metric)]
    pub metric: Metric,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Largest n to check (suite-specific default)
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse().map_err(|e: hultman::Error| e.to_string())
}

fn parse_statistic(s: &str) -> Result<Statistic, String> {
    s.parse().map_err(|e: hultman::Error| e.to_string())
}

fn emit(bytes: &[u8], out: &OutputArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

/// Runs one command. Returns `Ok(false)` when a verify suite reports a
/// failure.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<bool, CliError> {
    match &cli.command {
        Command::Table(a) => {
            let mut rows = Vec::new();
            for n in 0..=a.n_max {
                if n == 0 && a.n_max > 0 {
                    continue;
                }
                let row = if a.signed { signed_hultman_row(n) } else { hultman_row(n) };
                for (k, count) in row.into_iter().enumerate().skip(1) {
                    if a.dense || count != 0u32.into() {
                        rows.push((n, k as i64, count));
                    }
                }
            }
            emit(&output::multi_table(&rows, a.signed, a.output.format)?, &a.output, stdout)?;
        }
        Command::Census(a) => {
            let opts = a.run.options();
            let table = match (a.statistic, a.signed) {
                (Statistic::Cycles, false) => hultman_census(a.n, opts)?,
                (Statistic::Cycles, true) => signed_hultman_census(a.n, opts)?,
                (Statistic::OddCycles, false) => odd_hultman_census(a.n, opts)?,
                (Statistic::OddCycles, true) => {
                    return Err(hultman::Error::OutOfDomain("the odd-cycle census is defined for unsigned permutations".into()).into())
                }
            };
            let lo = if a.statistic == Statistic::Cycles { 1 } else { 0 };
            let dense = a.dense.then_some((lo, a.n as i64 + 1));
            emit(&output::single_table(&table, dense, a.output.format)?, &a.output, stdout)?;
        }
        Command::Moments(a) => {
            if a.n_max == 0 {
                return Err(hultman::Error::OutOfDomain("moments need --n >= 1".into()).into());
            }
            let rows: Vec<_> = (1..=a.n_max)
                .map(|n| (n, if a.signed { signed_moments(n) } else { unsigned_moments(n) }))
                .collect();
            emit(&output::moments(&rows, a.signed, a.output.format)?, &a.output, stdout)?;
        }
        Command::Dist(a) => {
            let table = distance_distribution(a.n, a.metric, a.run.options())?;
            let dense = a.dense.then_some((0, table.max_key().unwrap_or(0)));
            emit(&output::single_table(&table, dense, a.output.format)?, &a.output, stdout)?;
        }
        Command::Compare(a) => {
            let c = compare(a.n, a.metric, a.run.options())?;
            emit(&output::comparison(&c, a.output.format)?, &a.output, stdout)?;
        }
        Command::Verify(a) => {
            let report = verify::run_suite(a.suite, a.max_n, a.jobs)?;
            stdout.write_all(report.render(a.suite).as_bytes())?;
            return Ok(report.passed());
        }
    }
    Ok(true)
}

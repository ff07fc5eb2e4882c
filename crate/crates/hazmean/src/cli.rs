//! Batch command-line front end.
//!
//! Subcommands: `analyze`, `classify`, `compare`, `system`, `estimate`,
//! `simulate`. Inputs are model specs (`kind:param=value,...`) and grid
//! specs (`start:stop:points[:log|:linear]`); outputs are written to files,
//! never back onto the inputs. Exit codes: 0 success, 1 domain errors,
//! 2 usage errors.

use crate::classify::{classify, verdicts_to_json, ANALYTIC_TOL};
use crate::error::{Error, Result};
use crate::estimate::{estimated_profile, kernel_hazard, Bandwidth, SurvivalSample};
use crate::functionals::{profile, ProfileOptions};
use crate::grid::GridSpec;
use crate::model::HazardModel;
use crate::orders::{check_order, verify_implications, OrderKind, ORDER_TOL};
use crate::quad::DEFAULT_REL_TOL;
use crate::simstudy::{run_study, SimConfig};
use crate::systems::{series, verify_series_bounds, BOUND_TOL};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};

/// Environment variable overriding the default simulation seed.
pub const SEED_ENV_VAR: &str = "HAZMEAN_SEED";
const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "hazmean",
    version,
    about = "Mean failure rates and aging intensities for lifetime models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Profile the hazard and its six functionals over a grid
    Analyze {
        /// Model spec, e.g. weibull:alpha=0.5,beta=1.5
        #[arg(long)]
        model: String,
        /// Grid spec start:stop:points[:log|:linear]
        #[arg(long)]
        grid: String,
        /// Output path
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Use closed forms where the catalog provides them
        #[arg(long)]
        exact: bool,
        /// Relative quadrature tolerance
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Classify aging behavior (monotonicity verdicts as JSON)
    Classify {
        #[arg(long)]
        model: String,
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: PathBuf,
        /// Classification tolerance
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compare two models under stochastic orders
    Compare {
        /// Model spec for X
        #[arg(long)]
        x: String,
        /// Model spec for Y
        #[arg(long)]
        y: String,
        /// Comma-separated order kinds, or "all"
        #[arg(long, default_value = "all")]
        orders: String,
        #[arg(long, default_value = "0.1:5:32")]
        grid: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Verify series-system bounds for a set of components
    System {
        /// Component model spec (repeat per component)
        #[arg(long = "component", required = true)]
        components: Vec<String>,
        #[arg(long, default_value = "0.1:5:32")]
        grid: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Kernel hazard estimation from a censored-data CSV (`time,status`)
    Estimate {
        /// Input CSV path
        #[arg(long)]
        data: PathBuf,
        /// "auto" or a positive number
        #[arg(long, default_value = "auto")]
        bandwidth: String,
        /// Number of evaluation points over the observed range
        #[arg(long, default_value_t = 64)]
        grid_size: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Monte Carlo bias/MSE study (config file of key=value lines)
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// JSON report path
        #[arg(long)]
        out: PathBuf,
        /// Optional long-format CSV path
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn default_seed_from_env() -> u64 {
    std::env::var(SEED_ENV_VAR)
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
        .unwrap_or(DEFAULT_SEED)
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze {
            model,
            grid,
            out,
            format,
            exact,
            tol,
        } => {
            let m = HazardModel::parse(&model)?;
            let grid = GridSpec::parse(&grid)?.build(m.support().left)?;
            let opts = ProfileOptions {
                exact,
                rel_tol: tol.unwrap_or(DEFAULT_REL_TOL),
            };
            let p = profile(&m, &grid, &opts)?;
            let body = match format {
                OutputFormat::Csv => p.to_csv(),
                OutputFormat::Json => p.to_json(),
            };
            write_file(&out, &body)?;
            println!("wrote {} ({} rows)", out.display(), p.len());
        }
        Command::Classify {
            model,
            grid,
            out,
            tol,
        } => {
            let m = HazardModel::parse(&model)?;
            let grid = GridSpec::parse(&grid)?.build(m.support().left)?;
            let verdicts = classify(&m, &grid, tol.unwrap_or(ANALYTIC_TOL))?;
            write_file(&out, &verdicts_to_json(&verdicts))?;
            println!("wrote {} ({} verdicts)", out.display(), verdicts.len());
        }
        Command::Compare {
            x,
            y,
            orders,
            grid,
            out,
            tol,
        } => {
            let mx = HazardModel::parse(&x)?;
            let my = HazardModel::parse(&y)?;
            let left = mx.support().left.max(my.support().left);
            let grid = GridSpec::parse(&grid)?.build(left)?;
            let tol = tol.unwrap_or(ORDER_TOL);
            let kinds: Vec<OrderKind> = if orders.eq_ignore_ascii_case("all") {
                OrderKind::ALL.to_vec()
            } else {
                orders
                    .split(',')
                    .map(|s| OrderKind::parse(s.trim()))
                    .collect::<Result<_>>()?
            };
            let mut reports = Vec::new();
            for kind in kinds {
                match check_order(&mx, &my, kind, &grid, tol) {
                    Ok(r) => reports.push(r.to_json()),
                    Err(Error::DivergentFunctional) => reports.push(format!(
                        "{{\"kind\":\"{}\",\"direction\":null,\"error\":\"divergent on grid\"}}",
                        kind.name()
                    )),
                    Err(e) => return Err(e),
                }
            }
            let implications = verify_implications(&mx, &my, &grid, tol)?;
            let body = format!(
                "{{\"orders\":[\n{}\n],\n\"implications\":{}}}\n",
                reports.join(",\n"),
                implications.to_json()
            );
            write_file(&out, &body)?;
            println!("wrote {}", out.display());
        }
        Command::System {
            components,
            grid,
            out,
        } => {
            let models: Result<Vec<HazardModel>> =
                components.iter().map(|s| HazardModel::parse(s)).collect();
            let sys = series(models?)?;
            let grid = GridSpec::parse(&grid)?.build(sys.composite.support().left)?;
            let report = verify_series_bounds(&sys, &grid, BOUND_TOL)?;
            write_file(&out, &report.to_json())?;
            println!("wrote {} (all_ok = {})", out.display(), report.all_ok());
        }
        Command::Estimate {
            data,
            bandwidth,
            grid_size,
            out,
            format,
        } => {
            let sample = SurvivalSample::from_csv(&read_file(&data)?)?;
            let bw = if bandwidth.eq_ignore_ascii_case("auto") {
                Bandwidth::Auto
            } else {
                Bandwidth::Fixed(bandwidth.parse::<f64>().map_err(|_| {
                    Error::InvalidParameter(format!(
                        "bandwidth must be 'auto' or a number, got '{bandwidth}'"
                    ))
                })?)
            };
            let est = kernel_hazard(&sample, bw, grid_size)?;
            let p = estimated_profile(&est);
            let body = match format {
                OutputFormat::Csv => p.to_csv(),
                OutputFormat::Json => p.to_json(),
            };
            write_file(&out, &body)?;
            println!(
                "wrote {} ({} rows, bandwidth {})",
                out.display(),
                p.len(),
                est.bandwidth
            );
        }
        Command::Simulate { config, out, csv } => {
            let cfg = SimConfig::parse(&read_file(&config)?, default_seed_from_env())?;
            let report = run_study(&cfg)?;
            write_file(&out, &report.to_json())?;
            if let Some(csv_path) = csv {
                write_file(&csv_path, &report.to_csv())?;
            }
            println!(
                "wrote {} ({} cells, {} failed replications)",
                out.display(),
                report.cells.len(),
                report.failed_replications
            );
        }
    }
    Ok(())
}

/// Parse arguments and run; returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Testable entry point over explicit arguments.
pub fn run_from<I>(args: I) -> i32
where
    I: IntoIterator,
    I::Item: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

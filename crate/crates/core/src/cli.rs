//! Command-line front end.
//!
//! Systems are read from a JSON document:
//!
//! ```json
//! {"kind": "similitude", "rho": [0.5, 0.5], "weights": [0.3, 0.7]}
//! {"kind": "warped", "partition": [0, 0.4, 1], "beta": [0.3, -0.2], "weights": [0.6, 0.4]}
//! ```
//!
//! `kind` may be omitted when it is implied by `rho` or `partition`, and
//! every number may also be written as a decimal string. Results go to
//! stdout as one JSON object per command; errors go to stderr as one JSON
//! line. Exit codes: 0 success, 2 configuration or validation error,
//! 3 tolerance not reached, 4 check failure.
//!
//! CSV files carry a header row and print every number with 17 significant
//! digits.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use crate::analysis::{
    classify_similitude, combo_monotone_check, combo_residual, equation_residual, extend_phi,
    integral_equalwidth, integral_quadrature, nominal_residual_bound, ComboSpec,
};
use crate::error::IfsError;
use crate::ifs::IfsSystem;
use crate::mc::{chaos_game, ks_distance, DEFAULT_BURN_IN};
use crate::measure::{phi_eval, DEFAULT_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "ifs-cdf",
    version,
    about = "Invariant-measure CDFs of iterated function systems on [0,1]"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate φ(x) with its error bound.
    Eval {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Digit expansion of x and the resulting cell.
    Digits {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        depth: usize,
    },
    /// Write `x,phi,error_bound` over a uniform grid as CSV.
    Table {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Largest residual of the functional equation over a grid, checked
    /// against the certified bound of each point.
    Check {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Absolutely continuous or singular verdict.
    Classify {
        #[arg(long)]
        config: PathBuf,
    },
    /// Closed-form integral when available, with a quadrature cross-check.
    Integral {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
    },
    /// Extension of φ to the real line (equal-width systems only).
    Extend {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
    },
    /// Chaos-game sample and its KS distance to φ.
    Sample {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Residual and monotonicity of Σ a_i φ_{p_i} + B.
    Combo {
        /// Comma-separated `a:p` pairs.
        #[arg(long, allow_hyphen_values = true)]
        terms: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        grid: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Invalid(#[from] IfsError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "ConfigError",
            CliError::Invalid(e) => e.kind(),
            CliError::Io(_) => "IoError",
        }
    }
}

/// How a successful command ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    ToleranceNotReached,
    CheckFailed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::ToleranceNotReached => 3,
            Status::CheckFailed => 4,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Decimal {
    Number(f64),
    Text(String),
}

impl Decimal {
    fn value(&self) -> Result<f64, CliError> {
        match self {
            Decimal::Number(v) => Ok(*v),
            Decimal::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("'{s}' is not a decimal number"))),
        }
    }
}

fn decimals(list: &[Decimal]) -> Result<Vec<f64>, CliError> {
    list.iter().map(Decimal::value).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigKind {
    Similitude,
    Warped,
}

/// JSON description of a system.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    kind: Option<ConfigKind>,
    rho: Option<Vec<Decimal>>,
    partition: Option<Vec<Decimal>>,
    beta: Option<Vec<Decimal>>,
    weights: Vec<Decimal>,
}

impl SystemConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn kind(&self) -> Result<ConfigKind, CliError> {
        match (self.kind, &self.rho, &self.partition) {
            (Some(k), _, _) => Ok(k),
            (None, Some(_), None) => Ok(ConfigKind::Similitude),
            (None, None, Some(_)) => Ok(ConfigKind::Warped),
            _ => Err(CliError::Config(
                "config needs a 'kind', or exactly one of 'rho' and 'partition'".into(),
            )),
        }
    }

    pub fn build(&self) -> Result<IfsSystem, CliError> {
        let weights = decimals(&self.weights)?;
        match self.kind()? {
            ConfigKind::Similitude => {
                let rho = self
                    .rho
                    .as_deref()
                    .ok_or_else(|| CliError::Config("similitude config needs 'rho'".into()))?;
                Ok(IfsSystem::similitudes(&decimals(rho)?, weights)?)
            }
            ConfigKind::Warped => {
                let partition = self
                    .partition
                    .as_deref()
                    .ok_or_else(|| CliError::Config("warped config needs 'partition'".into()))?;
                let beta = self
                    .beta
                    .as_deref()
                    .ok_or_else(|| CliError::Config("warped config needs 'beta'".into()))?;
                Ok(IfsSystem::warped(
                    &decimals(partition)?,
                    &decimals(beta)?,
                    weights,
                )?)
            }
        }
    }
}

/// Formats with 17 significant digits.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parses `a1:p1,a2:p2,...`.
pub fn parse_terms(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (a, p) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Config(format!("term '{pair}' is not of the form a:p")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Config(format!("'{s}' is not a decimal number")))
            };
            Ok((num(a)?, num(p)?))
        })
        .collect()
}

fn grid_points(grid: usize) -> Result<Vec<f64>, CliError> {
    if grid < 2 {
        return Err(CliError::Config(format!(
            "grid must have at least 2 points, got {grid}"
        )));
    }
    Ok((0..grid).map(|i| i as f64 / (grid - 1) as f64).collect())
}

fn emit(out: &mut dyn Write, value: serde_json::Value) -> Result<(), CliError> {
    writeln!(out, "{value}")?;
    Ok(())
}

/// Runs one parsed command, writing its report to `out`.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<Status, CliError> {
    match command {
        Command::Eval { config, x, tol } => {
            let system = SystemConfig::load(config)?.build()?;
            let v = phi_eval(&system, *x, *tol)?;
            emit(
                out,
                json!({
                    "x": x,
                    "value": v.value,
                    "error_bound": v.error_bound,
                    "depth": v.depth,
                    "tolerance_reached": v.tolerance_reached,
                }),
            )?;
            Ok(if v.tolerance_reached {
                Status::Ok
            } else {
                Status::ToleranceNotReached
            })
        }
        Command::Digits { config, x, depth } => {
            let system = SystemConfig::load(config)?.build()?;
            let digits = system.digit_expand(*x, *depth)?;
            let (low, high) = system.compose_cell(&digits)?;
            emit(
                out,
                json!({
                    "x": x,
                    "digits": digits.digits(),
                    "depth": digits.depth(),
                    "cell": [low, high],
                }),
            )?;
            Ok(Status::Ok)
        }
        Command::Table {
            config,
            grid,
            tol,
            out: path,
        } => {
            let system = SystemConfig::load(config)?.build()?;
            let xs = grid_points(*grid)?;
            let rows = xs
                .par_iter()
                .map(|&x| phi_eval(&system, x, *tol).map(|v| (x, v)))
                .collect::<Result<Vec<_>, _>>()?;
            let mut csv = String::from("x,phi,error_bound\n");
            for (x, v) in &rows {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    sig17(*x),
                    sig17(v.value),
                    sig17(v.error_bound)
                ));
            }
            fs::write(path, csv)?;
            let reached = rows.iter().all(|(_, v)| v.tolerance_reached);
            emit(
                out,
                json!({
                    "rows": rows.len(),
                    "out": path.display().to_string(),
                    "tolerance_reached": reached,
                }),
            )?;
            Ok(if reached {
                Status::Ok
            } else {
                Status::ToleranceNotReached
            })
        }
        Command::Check { config, grid, tol } => {
            let system = SystemConfig::load(config)?.build()?;
            let xs = grid_points(*grid)?;
            let residuals = xs
                .par_iter()
                .map(|&x| equation_residual(&system, x, *tol))
                .collect::<Result<Vec<_>, _>>()?;
            let max_residual = residuals.iter().map(|r| r.value.abs()).fold(0.0, f64::max);
            let max_bound = residuals.iter().map(|r| r.bound).fold(0.0, f64::max);
            let nominal = nominal_residual_bound(&system, *tol);
            let pass = residuals.iter().all(|r| r.within_bound());
            emit(
                out,
                json!({
                    "grid": grid,
                    "max_residual": max_residual,
                    "bound": max_bound,
                    "nominal_bound": nominal,
                    "within_nominal": max_residual <= nominal,
                    "pass": pass,
                }),
            )?;
            Ok(if pass {
                Status::Ok
            } else {
                Status::CheckFailed
            })
        }
        Command::Classify { config } => {
            let system = SystemConfig::load(config)?.build()?;
            let result = classify_similitude(&system);
            emit(
                out,
                serde_json::to_value(result).expect("classification serializes"),
            )?;
            Ok(Status::Ok)
        }
        Command::Integral { config, grid } => {
            let system = SystemConfig::load(config)?.build()?;
            let closed = match integral_equalwidth(&system) {
                Ok(v) => Some(v),
                Err(IfsError::Applicability(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let quad = integral_quadrature(&system, *grid, DEFAULT_TOL)?;
            let agree = closed.map(|c| (c - quad.value).abs() <= quad.error_bound);
            emit(
                out,
                json!({
                    "closed_form": closed,
                    "quadrature": quad.value,
                    "quadrature_bound": quad.error_bound,
                    "agree": agree,
                }),
            )?;
            Ok(if agree == Some(false) {
                Status::CheckFailed
            } else {
                Status::Ok
            })
        }
        Command::Extend { config, x } => {
            let system = SystemConfig::load(config)?.build()?;
            let v = extend_phi(&system, *x, DEFAULT_TOL)?;
            emit(
                out,
                json!({
                    "x": x,
                    "value": v.value(),
                    "integer_part": v.integer_part,
                    "fraction": v.fraction.value,
                    "error_bound": v.error_bound(),
                    "tolerance_reached": v.fraction.tolerance_reached,
                }),
            )?;
            Ok(if v.fraction.tolerance_reached {
                Status::Ok
            } else {
                Status::ToleranceNotReached
            })
        }
        Command::Sample {
            config,
            n,
            seed,
            out: path,
        } => {
            let system = SystemConfig::load(config)?.build()?;
            let run = chaos_game(&system, *seed, DEFAULT_BURN_IN, *n)?;
            let ks = ks_distance(&run, &system, DEFAULT_TOL)?;
            if let Some(path) = path {
                let m = run.samples.len() as f64;
                let mut csv = String::from("x,ecdf\n");
                for (i, s) in run.samples.iter().enumerate() {
                    csv.push_str(&format!("{},{}\n", sig17(*s), sig17((i + 1) as f64 / m)));
                }
                fs::write(path, csv)?;
            }
            emit(
                out,
                json!({
                    "generator": run.generator,
                    "seed": run.seed,
                    "burn_in": run.burn_in,
                    "count": run.count,
                    "ks_distance": ks.distance,
                    "phi_bound": ks.phi_bound,
                    "statistic": ks.statistic(),
                }),
            )?;
            Ok(Status::Ok)
        }
        Command::Combo { terms, beta, grid } => {
            let combo = ComboSpec::new(&parse_terms(terms)?, *beta)?;
            let xs = grid_points(*grid)?;
            let mut max_residual = 0.0f64;
            let mut pass = true;
            for &x in &xs {
                let r = combo_residual(&combo, x, DEFAULT_TOL)?;
                max_residual = max_residual.max(r.value.abs());
                pass &= r.within_bound();
            }
            let bound = 4.0 * combo.coefficient_norm() * DEFAULT_TOL;
            let mono = combo_monotone_check(&combo, *grid, DEFAULT_TOL)?;
            emit(
                out,
                json!({
                    "max_residual": max_residual,
                    "bound": bound,
                    "pass": pass,
                    "predicted": mono.predicted,
                    "empirical": mono.empirical,
                }),
            )?;
            Ok(if pass {
                Status::Ok
            } else {
                Status::CheckFailed
            })
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or_default();
            let _ = writeln!(err, "{}", json!({"kind": "UsageError", "error": first}));
            return 2;
        }
    };
    match execute(&cli.command, out) {
        Ok(status) => {
            match status {
                Status::Ok => {}
                Status::ToleranceNotReached => {
                    let _ = writeln!(
                        err,
                        "{}",
                        json!({"kind": "ToleranceNotReached", "error": "depth cap reached before the tolerance"})
                    );
                }
                Status::CheckFailed => {
                    let _ = writeln!(
                        err,
                        "{}",
                        json!({"kind": "CheckFailed", "error": "residual exceeds its bound"})
                    );
                }
            }
            status.code()
        }
        Err(e) => {
            let _ = writeln!(err, "{}", json!({"kind": e.kind(), "error": e.to_string()}));
            2
        }
    }
}

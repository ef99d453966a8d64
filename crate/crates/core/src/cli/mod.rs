//! Command-line front end: run configuration, field parsing, and the
//! `verify`, `table1` and `phase` commands.

mod commands;
pub mod dsl;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub use commands::{run, run_phase, run_table1, run_verify};
pub use dsl::{parse_component, parse_field, parse_field_text};
pub use report::{Check, Report, Residual, Row};

use crate::error::{Error, Result};
use crate::realization::RealizationKind;
use crate::scalars::{ParamValues, Symbol};
use crate::weyl::{GaugeFieldSpec, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    #[default]
    Verify,
    Table1,
    Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseConfig {
    Ab,
    Anandan,
    Ac,
    Hmw,
    StarShiftAb,
}

impl PhaseConfig {
    pub fn name(self) -> &'static str {
        match self {
            PhaseConfig::Ab => "ab",
            PhaseConfig::Anandan => "anandan",
            PhaseConfig::Ac => "ac",
            PhaseConfig::Hmw => "hmw",
            PhaseConfig::StarShiftAb => "star-shift-ab",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Circle used for the numeric loop integral, and the solenoid radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContourConfig {
    pub center: [f64; 2],
    pub radius: f64,
    pub samples: usize,
    pub solenoid_radius: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        ContourConfig {
            center: [0.0, 0.0],
            radius: 2.0,
            samples: 10_000,
            solenoid_radius: 1.0,
        }
    }
}

/// Everything a run depends on. The JSON form is accepted by `--config`.
///
/// Defaults: all five kinds for `verify`, the three Hall kinds for
/// `table1`; e² terms dropped for `general_r1r2`; 24 Fock levels per mode;
/// numeric values `hbar = m = e = c = B = rho_e = 1`, `E = 1e-2`,
/// `theta = 1e-3`, `k1 = k2 = k3 = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub phase: Option<PhaseConfig>,
    pub kinds: Vec<RealizationKind>,
    pub keep_e2: bool,
    /// One DSL source per gauge-field component.
    pub field: Vec<String>,
    pub theta: Option<f64>,
    pub params: BTreeMap<String, f64>,
    pub levels: usize,
    pub contour: ContourConfig,
    pub tolerance: Option<f64>,
    pub format: OutputFormat,
    pub expand: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Verify,
            phase: None,
            kinds: Vec::new(),
            keep_e2: false,
            field: Vec::new(),
            theta: None,
            params: BTreeMap::new(),
            levels: 24,
            contour: ContourConfig::default(),
            tolerance: None,
            format: OutputFormat::Text,
            expand: false,
        }
    }
}

const DEFAULT_VALUES: [(Symbol, f64); 11] = [
    (Symbol::Hbar, 1.0),
    (Symbol::Mass, 1.0),
    (Symbol::Charge, 1.0),
    (Symbol::C, 1.0),
    (Symbol::B, 1.0),
    (Symbol::RhoE, 1.0),
    (Symbol::EField, 1e-2),
    (Symbol::Theta, 1e-3),
    (Symbol::K1, 0.0),
    (Symbol::K2, 0.0),
    (Symbol::K3, 0.0),
];

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl RunConfig {
    /// Rejects contradictory or out-of-range settings before any computation.
    pub fn validate(&self) -> Result<()> {
        match (self.command, self.phase) {
            (Command::Phase, None) => return Err(config_err("phase requires a configuration name")),
            (Command::Phase, Some(_)) | (_, None) => {}
            (c, Some(p)) => {
                return Err(config_err(format!(
                    "phase configuration `{}` given for command {c:?}",
                    p.name()
                )))
            }
        }
        if self.keep_e2 {
            if let Some(k) = self.kinds.iter().find(|k| !k.accepts_keep_flag()) {
                return Err(config_err(format!(
                    "--keep-e2 contradicts the fixed grading of {k}"
                )));
            }
        }
        match (self.command, self.phase) {
            (Command::Table1, _) => {
                if let Some(k) = self.kinds.iter().find(|k| !k.is_hall()) {
                    return Err(config_err(format!("table1 covers the Hall kinds only, got {k}")));
                }
                if self.keep_e2 {
                    return Err(config_err("--keep-e2 has no meaning for table1"));
                }
            }
            (Command::Phase, Some(p)) if p != PhaseConfig::Ab && !self.kinds.is_empty() => {
                return Err(config_err(format!(
                    "phase {} does not take a realization",
                    p.name()
                )));
            }
            _ => {}
        }
        if self.theta.is_some() && self.params.contains_key(Symbol::Theta.name()) {
            return Err(config_err("theta given both as --theta and in --params"));
        }
        for (k, v) in &self.params {
            let sym: Symbol = k.parse().map_err(config_err)?;
            if sym.is_derived() {
                return Err(config_err(format!("`{k}` is derived and cannot be set")));
            }
            if !v.is_finite() {
                return Err(config_err(format!("parameter {k} = {v} is not finite")));
            }
        }
        if let Some(t) = self.theta {
            if !t.is_finite() {
                return Err(config_err("theta must be finite"));
            }
        }
        if !(4..=64).contains(&self.levels) {
            return Err(config_err(format!("levels {} outside 4..=64", self.levels)));
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(config_err(format!("tolerance {t} must be positive")));
            }
        }
        let c = &self.contour;
        if c.samples < 8 || !(c.radius > 0.0) || !(c.solenoid_radius > 0.0) {
            return Err(config_err("contour needs at least 8 samples and positive radii"));
        }
        if !self.field.is_empty() {
            self.gauge_field(Region::Uniform)?;
        }
        Ok(())
    }

    /// Numeric values: defaults, then `--params`, then `--theta`.
    pub fn values(&self) -> Result<ParamValues> {
        let mut v: ParamValues = DEFAULT_VALUES.into_iter().collect();
        for (k, x) in &self.params {
            v.insert(k.parse().map_err(config_err)?, *x);
        }
        if let Some(t) = self.theta {
            v.insert(Symbol::Theta, t);
        }
        Ok(v)
    }

    /// Symbolic results are evaluated at θ = 0 when the numeric θ is zero.
    pub fn theta_is_zero(&self) -> Result<bool> {
        Ok(self.values()?[&Symbol::Theta] == 0.0)
    }

    /// The parsed `--field`, or `default` when none was given.
    pub fn gauge_field(&self, region: Region) -> Result<GaugeFieldSpec> {
        let srcs: Vec<&str> = self.field.iter().map(String::as_str).collect();
        parse_field(&srcs, region)
    }

    pub(crate) fn field_or(&self, default: GaugeFieldSpec) -> Result<GaugeFieldSpec> {
        if self.field.is_empty() {
            Ok(default)
        } else {
            self.gauge_field(default.region())
        }
    }

    pub(crate) fn summary(&self) -> String {
        let mut s = match (self.command, self.phase) {
            (Command::Phase, Some(p)) => format!("phase {}", p.name()),
            (Command::Table1, _) => "table1".to_string(),
            _ => "verify".to_string(),
        };
        for k in &self.kinds {
            s.push_str(&format!(" --kind {k}"));
        }
        if self.keep_e2 {
            s.push_str(" --keep-e2");
        }
        if let Some(t) = self.theta {
            s.push_str(&format!(" --theta {t}"));
        }
        if self.expand {
            s.push_str(" --expand");
        }
        s
    }
}

#[derive(Debug, Parser)]
#[command(name = "ncqm", version, about = "Verify deformed-coordinate realizations, Landau coefficients and quantum phases")]
pub struct Cli {
    /// Read the whole run configuration from a JSON file instead of flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Sub>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Symbolic algebra, Jacobi and field conditions plus the Fock-space oracle.
    Verify(RunArgs),
    /// Landau coefficients and Hall conductivity of the three Hall kinds.
    Table1(RunArgs),
    /// Base phase, deformation factor and absolute phase.
    Phase {
        #[arg(value_enum)]
        configuration: PhaseConfig,
        #[command(flatten)]
        args: RunArgs,
    },
}

fn parse_kind(s: &str) -> std::result::Result<RealizationKind, String> {
    s.parse::<RealizationKind>().map_err(|e| e.to_string())
}

fn parse_param(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("{k}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunArgs {
    /// Realization kind (repeatable).
    #[arg(long = "kind", visible_alias = "realization", value_parser = parse_kind)]
    pub kinds: Vec<RealizationKind>,
    /// Keep the e²θ terms (general_r1r2 and hall_2 only).
    #[arg(long)]
    pub keep_e2: bool,
    /// Gauge-field component in the field DSL (one per axis, in order).
    #[arg(long = "field", allow_hyphen_values = true)]
    pub field: Vec<String>,
    /// Numeric θ; 0 also sets θ to zero in symbolic results.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Numeric parameter values, e.g. `--params hbar=1 E=0.01`.
    #[arg(long, num_args = 1.., value_parser = parse_param)]
    pub params: Vec<(String, f64)>,
    /// Fock levels per mode for the oracle.
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long)]
    pub contour_samples: Option<usize>,
    #[arg(long)]
    pub contour_radius: Option<f64>,
    #[arg(long, num_args = 2, allow_hyphen_values = true)]
    pub contour_center: Option<Vec<f64>>,
    #[arg(long)]
    pub solenoid_radius: Option<f64>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Render results in primitive symbols.
    #[arg(long)]
    pub expand: bool,
}

impl RunArgs {
    fn into_config(self, command: Command, phase: Option<PhaseConfig>) -> RunConfig {
        let d = RunConfig::default();
        let dc = ContourConfig::default();
        RunConfig {
            command,
            phase,
            kinds: self.kinds,
            keep_e2: self.keep_e2,
            field: self.field,
            theta: self.theta,
            params: self.params.into_iter().collect(),
            levels: self.levels.unwrap_or(d.levels),
            contour: ContourConfig {
                center: self
                    .contour_center
                    .map(|c| [c[0], c[1]])
                    .unwrap_or(dc.center),
                radius: self.contour_radius.unwrap_or(dc.radius),
                samples: self.contour_samples.unwrap_or(dc.samples),
                solenoid_radius: self.solenoid_radius.unwrap_or(dc.solenoid_radius),
            },
            tolerance: self.tolerance,
            format: self.format.unwrap_or_default(),
            expand: self.expand,
        }
    }
}

impl Cli {
    /// Resolves flags or the config file into a validated [`RunConfig`].
    pub fn into_config(self) -> Result<RunConfig> {
        let cfg = match (self.config, self.command) {
            (Some(_), Some(_)) => {
                return Err(config_err("use either --config or a subcommand with flags"))
            }
            (None, None) => return Err(config_err("no command given")),
            (Some(path), None) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| config_err(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| config_err(format!("{}: {e}", path.display())))?
            }
            (None, Some(Sub::Verify(a))) => a.into_config(Command::Verify, None),
            (None, Some(Sub::Table1(a))) => a.into_config(Command::Table1, None),
            (None, Some(Sub::Phase { configuration, args })) => {
                args.into_config(Command::Phase, Some(configuration))
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Process entry point: 0 when every check passed, 1 on a failed check or
/// computation error, 2 on a configuration error.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(report) => {
            let out = match cfg.format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Text => report.to_text(),
            };
            print!("{out}");
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

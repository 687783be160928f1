//! Command-line arguments and the resolved command specification.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use super::config::{load_config, ConfigValues};
use crate::attacks::AttackKind;
use crate::error::{Error, Result};
use crate::protocols::{ProtocolId, DEFAULT_SEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <Self as ValueEnum>::from_str(s, false)
            .map_err(|_| Error::InvalidParameter(format!("unknown format `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Simulate,
    Analyze,
    Reproduce,
    Sweep,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Simulate => "simulate",
            Command::Analyze => "analyze",
            Command::Reproduce => "reproduce",
            Command::Sweep => "sweep",
        })
    }
}

/// Parameter varied by `sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    /// Hybrid-attack intercept fraction: columns f, e, I_AB, I_AE.
    F,
    /// Cascade length: columns n, D, p_c, r0.
    N,
    /// Security parameter: columns s, r.
    S,
}

fn parse_protocol(s: &str) -> std::result::Result<ProtocolId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_attack(s: &str) -> std::result::Result<AttackKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// noh09 | scqkd | guoshi | cascade | pingpong | bb84mod
    #[arg(long, value_parser = parse_protocol)]
    pub protocol: Option<ProtocolId>,
    /// none | noiseless | noisyflip | interceptresend | hybrid
    #[arg(long, value_parser = parse_attack)]
    pub attack: Option<AttackKind>,
    #[arg(long)]
    pub rounds: Option<u64>,
    /// Attack fraction for noisyflip, interceptresend and hybrid.
    #[arg(long)]
    pub f: Option<f64>,
    /// Number of cascaded beam splitters.
    #[arg(long)]
    pub n: Option<usize>,
    /// Privacy-amplification security parameter.
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub sample_fraction: Option<f64>,
    #[arg(long)]
    pub abort_threshold: Option<f64>,
    /// key=value file; flags take precedence over it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "f")]
    pub param: SweepParam,
    #[arg(long, default_value_t = 0.0)]
    pub from: f64,
    #[arg(long, default_value_t = 0.3)]
    pub to: f64,
    #[arg(long, default_value_t = 31)]
    pub steps: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum CliCommand {
    /// Monte Carlo session.
    Simulate(CommonArgs),
    /// Closed-form security report.
    Analyze(CommonArgs),
    /// Check every published figure.
    Reproduce(CommonArgs),
    /// Tabulate a closed-form quantity over a parameter grid.
    Sweep {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Parser)]
#[command(name = "cfqkd", version, about = "Counterfactual QKD under noiseless attacks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

/// Sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

/// Fully resolved command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandSpec {
    pub command: Command,
    pub protocol: ProtocolId,
    pub attack: AttackKind,
    pub rounds: u64,
    pub f: f64,
    pub n: usize,
    pub s: f64,
    pub seed: u64,
    pub sample_fraction: f64,
    pub abort_threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub format: Option<OutputFormat>,
}

impl CommandSpec {
    /// Defaults: noh09, noiseless, 100000 rounds, f = 0.1, n = 1, s = 0,
    /// seed [`DEFAULT_SEED`], every sifted bit checked, abort at 11 %.
    pub fn defaults(command: Command) -> Self {
        Self {
            command,
            protocol: ProtocolId::Noh09,
            attack: AttackKind::Noiseless,
            rounds: 100_000,
            f: 0.1,
            n: 1,
            s: 0.0,
            seed: DEFAULT_SEED,
            sample_fraction: 1.0,
            abort_threshold: 0.11,
            sweep: None,
            output: None,
            format: None,
        }
    }

    /// Layers `file` then `flags` over the defaults.
    pub fn merge(command: Command, file: &ConfigValues, flags: &CommonArgs) -> Self {
        let mut spec = Self::defaults(command);
        macro_rules! layer {
            ($($field:ident),*) => {
                $(
                    if let Some(v) = file.$field.clone() { spec.$field = v.into(); }
                    if let Some(v) = flags.$field.clone() { spec.$field = v.into(); }
                )*
            };
        }
        layer!(protocol, attack, rounds, f, n, s, seed, sample_fraction, abort_threshold);
        spec.output = flags.output.clone().or_else(|| file.output.clone());
        spec.format = flags.format.or(file.format);
        spec
    }

    pub fn format(&self) -> OutputFormat {
        self.format.unwrap_or(match self.command {
            Command::Sweep => OutputFormat::Csv,
            _ => OutputFormat::Json,
        })
    }
}

impl Cli {
    /// Resolves the parsed arguments, reading `--config` if given.
    pub fn into_spec(self) -> Result<CommandSpec> {
        let (command, common, sweep) = match self.command {
            CliCommand::Simulate(c) => (Command::Simulate, c, None),
            CliCommand::Analyze(c) => (Command::Analyze, c, None),
            CliCommand::Reproduce(c) => (Command::Reproduce, c, None),
            CliCommand::Sweep { sweep, common } => (Command::Sweep, common, Some(sweep)),
        };
        let file = match &common.config {
            Some(path) => load_config(path)?,
            None => ConfigValues::default(),
        };
        let mut spec = CommandSpec::merge(command, &file, &common);
        spec.sweep = sweep.map(|s| SweepSpec {
            param: s.param,
            from: s.from,
            to: s.to,
            steps: s.steps,
        });
        Ok(spec)
    }
}

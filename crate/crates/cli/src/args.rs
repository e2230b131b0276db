use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use corrflow::channels::ChannelKind;
use corrflow::correlations::{OptimizerSettings, Side};
use corrflow::scenarios::{uniform_grid, Bipartition, ScenarioConfig, ScenarioKind};
use corrflow::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "corrflow",
    version,
    about = "Sweep correlation measures of two qubits in independent noisy environments",
    args_conflicts_with_subcommands = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Flags for the default `run` command.
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep p and write one row per (p, bipartition) (the default).
    Run(SweepArgs),
    /// Check the configuration and estimate its cost without running it.
    Validate(SweepArgs),
    /// Compare the printed closed-form matrices with the evolution.
    Audit(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    Ape,
    Abe,
    Ppe,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    A,
    B,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "ape")]
    pub scenario: ScenarioArg,

    /// Channel on qubit A for `--scenario custom` (ad, pd, bf, bpf, pf).
    #[arg(long)]
    pub channel_a: Option<ChannelKind>,

    /// Channel on qubit B for `--scenario custom`.
    #[arg(long)]
    pub channel_b: Option<ChannelKind>,

    /// Initial-state parameter in (0, 1]; 1 is the singlet.
    #[arg(long, default_value_t = 0.4, allow_negative_numbers = true)]
    pub a: f64,

    #[arg(long, default_value_t = 101)]
    pub p_steps: usize,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub p_min: f64,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub p_max: f64,

    /// Comma-separated list of AB, AEA, BEB, AEB, BEA, EAEB, or `all`.
    #[arg(long, default_value = "all")]
    pub bipartitions: String,

    /// Grid points per measurement angle.
    #[arg(long, default_value_t = 24)]
    pub grid: usize,

    #[arg(long, default_value_t = 200)]
    pub refine_iters: usize,

    #[arg(long, default_value_t = 1e-9)]
    pub refine_tol: f64,

    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    /// Compare every reduced state with its printed closed form.
    #[arg(long)]
    pub oracle_check: bool,

    /// Locate sudden death, revival and sudden changes (needs `--out`).
    #[arg(long)]
    pub events: bool,

    /// Side measured by the one-sided discord.
    #[arg(long, value_enum, default_value = "b")]
    pub measured_side: SideArg,
}

/// Fully checked command-line configuration, echoed into the sidecar file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliConfig {
    pub scenario: ScenarioKind,
    pub channel_a: ChannelKind,
    pub channel_b: ChannelKind,
    pub a: f64,
    pub p_steps: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub bipartitions: Vec<Bipartition>,
    pub optimizer: OptimizerSettings,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub oracle_check: bool,
    pub events: bool,
    pub measured_side: Side,
}

fn flag_error(flag: &str, msg: impl std::fmt::Display) -> Error {
    Error::config(format!("{flag}: {msg}"))
}

impl CliConfig {
    pub fn from_args(args: &SweepArgs) -> Result<Self> {
        let scenario = match (args.scenario, args.channel_a, args.channel_b) {
            (ScenarioArg::Custom, Some(a), Some(b)) => ScenarioKind::Custom { a, b },
            (ScenarioArg::Custom, _, _) => {
                return Err(flag_error(
                    "--scenario custom",
                    "requires both --channel-a and --channel-b",
                ))
            }
            (_, Some(_), _) | (_, _, Some(_)) => {
                return Err(flag_error(
                    "--channel-a/--channel-b",
                    "only allowed with --scenario custom",
                ))
            }
            (ScenarioArg::Ape, ..) => ScenarioKind::Ape,
            (ScenarioArg::Abe, ..) => ScenarioKind::Abe,
            (ScenarioArg::Ppe, ..) => ScenarioKind::Ppe,
        };
        if !(args.a > 0.0 && args.a <= 1.0) {
            return Err(flag_error("--a", format!("{} is outside (0, 1]", args.a)));
        }
        uniform_grid(args.p_min, args.p_max, args.p_steps).map_err(|e| e.context("--p-min/--p-max/--p-steps"))?;
        let bipartitions = Bipartition::parse_list(&args.bipartitions).map_err(|e| e.context("--bipartitions"))?;
        if args.grid < 4 {
            return Err(flag_error("--grid", format!("must be at least 4, got {}", args.grid)));
        }
        if !(args.refine_tol > 0.0) {
            return Err(flag_error("--refine-tol", format!("must be positive, got {}", args.refine_tol)));
        }
        if args.oracle_check && matches!(scenario, ScenarioKind::Custom { .. }) {
            return Err(flag_error("--oracle-check", "custom scenarios have no printed matrices"));
        }
        if args.events && args.out.is_none() {
            return Err(flag_error("--events", "requires --out for the events file"));
        }
        if args.events && args.p_steps < corrflow::scenarios::MIN_SERIES_POINTS {
            return Err(flag_error(
                "--events",
                format!("needs at least {} p points", corrflow::scenarios::MIN_SERIES_POINTS),
            ));
        }
        let (channel_a, channel_b) = scenario.channels();
        Ok(CliConfig {
            scenario,
            channel_a,
            channel_b,
            a: args.a,
            p_steps: args.p_steps,
            p_min: args.p_min,
            p_max: args.p_max,
            bipartitions,
            optimizer: OptimizerSettings {
                grid_points_per_angle: args.grid,
                refine_iterations: args.refine_iters,
                refine_tolerance: args.refine_tol,
            },
            out: args.out.clone(),
            format: args.format,
            oracle_check: args.oracle_check,
            events: args.events,
            measured_side: match args.measured_side {
                SideArg::A => Side::A,
                SideArg::B => Side::B,
            },
        })
    }

    pub fn p_grid(&self) -> Vec<f64> {
        uniform_grid(self.p_min, self.p_max, self.p_steps).expect("checked in from_args")
    }

    pub fn scenario_config(&self) -> ScenarioConfig {
        ScenarioConfig {
            scenario: self.scenario,
            a: self.a,
            p_grid: self.p_grid(),
            bipartitions: self.bipartitions.clone(),
            optimizer: self.optimizer,
            oracle_check: self.oracle_check,
            measured_side: self.measured_side,
        }
    }
}

/// Rough work estimate reported by `validate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CostEstimate {
    pub sweep_points: usize,
    /// Objective evaluations in the two-sided grid stage, `grid⁴`.
    pub grid_stage_per_point: usize,
    /// Upper bound on refinement iterations.
    pub refine_per_point: usize,
    pub total: usize,
}

impl CostEstimate {
    pub fn of(cfg: &CliConfig) -> Self {
        let sweep_points = cfg.p_steps * cfg.bipartitions.len();
        let grid_stage_per_point = cfg.optimizer.grid_points_per_angle.pow(4);
        let refine_per_point = cfg.optimizer.refine_iterations;
        CostEstimate {
            sweep_points,
            grid_stage_per_point,
            refine_per_point,
            total: sweep_points * (grid_stage_per_point + refine_per_point),
        }
    }
}

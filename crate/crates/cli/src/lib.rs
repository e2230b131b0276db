//! Command-line front end for `corrflow` sweeps.
//!
//! `run` (the default) writes one row per `(p, bipartition)` plus a
//! `<out>.meta.json` sidecar describing the run; `--events` and
//! `--oracle-check` add `<out>.events.csv` and `<out>.discrepancies.csv`.
//! Exit status is 0 on success, 2 for configuration problems and 3 for
//! numeric-domain failures.

mod args;
pub mod output;

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

pub use args::{Cli, CliConfig, Command, CostEstimate, Format, ScenarioArg, SideArg, SweepArgs};
use corrflow::scenarios::{audit, detect_sweep_events, summarize_audit, sweep, EventSettings, ScenarioKind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] corrflow::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(corrflow::Error::NumericDomain(_)) => 3,
            CliError::Core(corrflow::Error::Config(_)) | CliError::Io { .. } => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Sidecar path next to `out`, e.g. `r.csv` → `r.events.csv`.
pub fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    out.with_extension(suffix)
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_stdout(stdout: &mut dyn Write, contents: &str) -> CliResult<()> {
    stdout.write_all(contents.as_bytes()).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

#[derive(Serialize)]
struct Meta<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config: &'a CliConfig,
    p_grid: Vec<f64>,
    rows: usize,
    columns: &'a [&'static str],
    events_file: Option<PathBuf>,
    events: Option<usize>,
    discrepancies_file: Option<PathBuf>,
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        None => run(&cli.sweep, stdout),
        Some(Command::Run(args)) => run(&args, stdout),
        Some(Command::Validate(args)) => validate(&args, stdout),
        Some(Command::Audit(args)) => audit_command(&args, stdout),
    }
}

fn run(args: &SweepArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let cfg = CliConfig::from_args(args)?;
    let records = sweep(&cfg.scenario_config())?;

    let events = if cfg.events {
        let settings = EventSettings {
            optimizer: cfg.optimizer,
            measured_side: cfg.measured_side,
            ..EventSettings::default()
        };
        Some(detect_sweep_events(&records, &settings)?)
    } else {
        None
    };
    let discrepancies = if cfg.oracle_check {
        Some(audit(cfg.scenario, cfg.a, &cfg.p_grid())?)
    } else {
        None
    };

    let body = match cfg.format {
        Format::Csv => output::records_csv(&records),
        Format::Json => output::records_json(&records),
    };
    let Some(out) = cfg.out.as_deref() else {
        return write_stdout(stdout, &body);
    };
    write_file(out, &body)?;

    let events_file = events.as_ref().map(|_| sidecar(out, "events.csv"));
    if let (Some(path), Some(ev)) = (&events_file, &events) {
        write_file(path, &output::events_csv(ev))?;
    }
    let discrepancies_file = discrepancies.as_ref().map(|_| sidecar(out, "discrepancies.csv"));
    if let (Some(path), Some(rows)) = (&discrepancies_file, &discrepancies) {
        write_file(path, &output::discrepancies_csv(rows))?;
    }
    let meta = Meta {
        tool: "corrflow",
        version: env!("CARGO_PKG_VERSION"),
        command: "run",
        config: &cfg,
        p_grid: cfg.p_grid(),
        rows: records.len(),
        columns: &corrflow::scenarios::CorrelationRecord::COLUMNS,
        events_file,
        events: events.as_ref().map(Vec::len),
        discrepancies_file,
    };
    let mut json = serde_json::to_string_pretty(&meta).expect("meta serializes");
    json.push('\n');
    write_file(&sidecar(out, "meta.json"), &json)
}

fn validate(args: &SweepArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let cfg = CliConfig::from_args(args)?;
    let cost = CostEstimate::of(&cfg);
    let names: Vec<&str> = cfg.bipartitions.iter().map(|b| b.name()).collect();
    let n = cfg.optimizer.grid_points_per_angle;
    let report = format!(
        "configuration: ok\n\
         scenario: {} ({} on A, {} on B)\n\
         a: {}\n\
         p grid: {} points on [{}, {}]\n\
         bipartitions: {} ({})\n\
         sweep points: {} ({} x {})\n\
         grid-stage evaluations per point: {} ({n}^4)\n\
         refine iterations per point (max): {}\n\
         estimated evaluations: {}\n",
        cfg.scenario,
        cfg.channel_a,
        cfg.channel_b,
        cfg.a,
        cfg.p_steps,
        cfg.p_min,
        cfg.p_max,
        names.join(","),
        names.len(),
        cost.sweep_points,
        cfg.p_steps,
        names.len(),
        cost.grid_stage_per_point,
        cost.refine_per_point,
        cost.total,
    );
    write_stdout(stdout, &report)
}

fn audit_command(args: &SweepArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let cfg = CliConfig::from_args(args)?;
    if matches!(cfg.scenario, ScenarioKind::Custom { .. }) {
        return Err(corrflow::Error::config("--scenario: custom scenarios have no printed matrices").into());
    }
    let rows = audit(cfg.scenario, cfg.a, &cfg.p_grid())?;
    let mut report = String::new();
    for s in summarize_audit(&rows) {
        let verdict = if s.flagged_invalid() {
            "INVALID"
        } else if s.matches() {
            "match"
        } else {
            "MISMATCH"
        };
        report.push_str(&format!(
            "{} {:<4} {:<8} points={} invalid={} valid_mismatch={} max_abs_dev={} swapped={} trace=[{}, {}]\n",
            s.scenario,
            s.pair.name(),
            verdict,
            s.points,
            s.invalid_points,
            s.valid_mismatch_points,
            output::fmt_deviation(s.max_abs_dev),
            output::fmt_deviation(s.max_abs_dev_swapped),
            output::fmt_real(s.min_trace),
            output::fmt_real(s.max_trace),
        ));
    }
    write_stdout(stdout, &report)?;
    if let Some(out) = cfg.out.as_deref() {
        write_file(out, &output::discrepancies_csv(&rows))?;
    }
    Ok(())
}

//! Command-line experiments on top of `platoon-access`.
//!
//! Every command reads an optional TOML experiment file, applies flag
//! overrides, and writes one table as CSV (with a `# schema=1` first line)
//! or JSON. Exit codes: 0 success, 1 failed check or infeasible problem,
//! 2 configuration error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod table;
pub mod verify;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use platoon_access::mopso::{ArchiveFeed, GridMode, InertiaSchedule, MoveRule};
use platoon_access::sim::{BackoffModel, SimMode};
use platoon_access::LaneScenario;

pub use config::{Command, ExperimentSpec, Format};
pub use error::{CliError, CliResult};
pub use table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandArg {
    /// Optimal windows for the configured lanes.
    Optimize,
    /// Optimized and standard windows across a grid of average velocities.
    Sweep,
    /// Slotted channel simulation.
    Simulate,
    /// Internal consistency checks.
    Verify,
    /// Final Pareto archive with the selected optimum flagged.
    Pareto,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Self {
        match c {
            CommandArg::Optimize => Command::Optimize,
            CommandArg::Sweep => Command::Sweep,
            CommandArg::Simulate => Command::Simulate,
            CommandArg::Verify => Command::Verify,
            CommandArg::Pareto => Command::Pareto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InertiaArg {
    Constant,
    ExponentialIncrease,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    /// Resolution follows the archive size.
    #[value(name = "archive-size", alias = "eq49")]
    ArchiveSize,
    /// Fixed resolution from `mesh_div`.
    #[value(name = "mesh-div", alias = "meshdiv")]
    MeshDiv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Snapshot,
    Traversal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackoffArg {
    FrozenCounter,
    Memoryless,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "platoon-access", version, about = "Contention-window experiments for platooning vehicles")]
pub struct Cli {
    pub command: CommandArg,
    /// TOML experiment file; every key is optional.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<FormatArg>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub vbar_min: Option<f64>,
    #[arg(long)]
    pub vbar_max: Option<f64>,
    #[arg(long)]
    pub vbar_step: Option<f64>,
    /// Velocity difference between the two lanes.
    #[arg(long)]
    pub gap: Option<f64>,
    /// Arrival rates as fractions of the maximum, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub arrival_fraction: Option<Vec<f64>>,
    /// Lane velocities for optimize, pareto and simulate, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub velocities: Option<Vec<f64>>,
    /// Draw the cognitive and social weights uniformly each step.
    #[arg(long)]
    pub stochastic_pso: bool,
    #[arg(long, value_enum)]
    pub inertia_schedule: Option<InertiaArg>,
    #[arg(long, value_enum)]
    pub grid_mode: Option<GridArg>,
    /// Move particles only to dominating positions and archive personal bests only.
    #[arg(long)]
    pub literal_pso: bool,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Simulated duration in slots.
    #[arg(long)]
    pub slots: Option<u64>,
    /// Simulated windows per lane, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub windows: Option<Vec<u32>>,
    #[arg(long, value_enum)]
    pub backoff: Option<BackoffArg>,
    /// Also write the final archive of an optimize run here.
    #[arg(long)]
    pub archive_output: Option<PathBuf>,
    /// Make the named verify check compare against a wrong value.
    #[arg(long, hide = true)]
    pub perturb: Option<String>,
}

impl Cli {
    /// Experiment file merged with flag overrides, validated for the command.
    pub fn spec(&self) -> CliResult<ExperimentSpec> {
        let mut s = match &self.config {
            Some(path) => ExperimentSpec::load(path)?,
            None => ExperimentSpec::default(),
        };
        s.command = self.command.into();
        if let Some(seed) = self.seed {
            s.seed = seed;
        }
        if let Some(p) = &self.output {
            s.output.path = Some(p.clone());
        }
        if let Some(f) = self.format {
            s.output.format = match f {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
        }
        let sw = &mut s.sweep;
        sw.vbar_min = self.vbar_min.unwrap_or(sw.vbar_min);
        sw.vbar_max = self.vbar_max.unwrap_or(sw.vbar_max);
        sw.vbar_step = self.vbar_step.unwrap_or(sw.vbar_step);
        sw.gap = self.gap.unwrap_or(sw.gap);
        if let Some(f) = &self.arrival_fraction {
            sw.arrival_fractions = f.clone();
        }
        if let Some(v) = &self.velocities {
            let fraction = self.arrival_fraction.as_ref().and_then(|f| f.first().copied()).unwrap_or(1.0);
            s.scenario.lanes = v.iter().map(|&v| LaneScenario::new(v, fraction)).collect();
        }
        let pso = &mut s.swarm;
        pso.stochastic_coefficients |= self.stochastic_pso;
        if let Some(i) = self.inertia_schedule {
            pso.inertia_schedule = match i {
                InertiaArg::Constant => InertiaSchedule::Constant,
                InertiaArg::ExponentialIncrease => InertiaSchedule::ExponentialIncrease,
            };
        }
        if let Some(g) = self.grid_mode {
            pso.grid_mode = match g {
                GridArg::ArchiveSize => GridMode::ArchiveSize,
                GridArg::MeshDiv => GridMode::MeshDiv,
            };
        }
        if self.literal_pso {
            pso.move_rule = MoveRule::Dominating;
            pso.archive_feed = ArchiveFeed::PersonalBest;
        }
        let sim = &mut s.simulate;
        if let Some(m) = self.mode {
            sim.mode = match m {
                ModeArg::Snapshot => SimMode::Snapshot,
                ModeArg::Traversal => SimMode::Traversal,
            };
        }
        sim.duration_slots = self.slots.unwrap_or(sim.duration_slots);
        if let Some(w) = &self.windows {
            sim.windows = Some(w.clone());
        }
        if let Some(b) = self.backoff {
            sim.backoff_model = match b {
                BackoffArg::FrozenCounter => BackoffModel::FrozenCounter,
                BackoffArg::Memoryless => BackoffModel::Memoryless,
            };
        }
        if let Some(name) = &self.perturb {
            if !verify::is_check(name) {
                return Err(CliError::Config(format!(
                    "--perturb: unknown check `{name}` (one of {})",
                    verify::CHECKS.join(", ")
                )));
            }
        }
        s.validate()?;
        Ok(s)
    }
}

fn write_table(table: &Table, format: Format, out: &mut dyn Write) -> CliResult<()> {
    match format {
        Format::Csv => table.write_csv(out),
        Format::Json => table.write_json(out),
    }
}

fn emit(table: &Table, spec: &ExperimentSpec, stdout: &mut dyn Write) -> CliResult<()> {
    match &spec.output.path {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            write_table(table, spec.output.format, &mut f)?;
            f.flush()?;
            Ok(())
        }
        None => write_table(table, spec.output.format, stdout),
    }
}

/// Runs one parsed invocation, writing results to `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let spec = cli.spec()?;
    match spec.command {
        Command::Optimize => {
            let (table, res) = commands::optimize(&spec)?;
            if let Some(path) = &cli.archive_output {
                let mut f = BufWriter::new(File::create(path)?);
                write_table(&commands::archive_table(&res), spec.output.format, &mut f)?;
                f.flush()?;
            }
            emit(&table, &spec, stdout)
        }
        Command::Sweep => emit(&commands::sweep(&spec)?, &spec, stdout),
        Command::Simulate => emit(&commands::simulate_cmd(&spec)?, &spec, stdout),
        Command::Pareto => emit(&commands::pareto(&spec)?, &spec, stdout),
        Command::Verify => {
            let outcomes = verify::run_checks(&spec, cli.perturb.as_deref());
            for o in &outcomes {
                writeln!(stdout, "{}", o.line())?;
            }
            if spec.output.path.is_some() {
                emit(&verify::outcome_table(&outcomes), &spec, stdout)?;
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed > 0 {
                return Err(CliError::ChecksFailed {
                    failed,
                    total: outcomes.len(),
                });
            }
            Ok(())
        }
    }
}

/// Parses `args` (program name first) and runs them; returns the exit code.
pub fn run_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

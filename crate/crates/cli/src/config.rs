//! Experiment configuration: a TOML file whose every key has a default, so
//! an empty file (or none) runs the reference highway scenario.
//!
//! ```toml
//! seed = 7
//!
//! [network]
//! coverage = 200.0
//!
//! [swarm]
//! population = 200
//! inertia_schedule = "exponential-increase"
//!
//! [scenario]
//! lanes = [{ velocity = 26.5, arrival_fraction = 1.0 },
//!          { velocity = 22.5, arrival_fraction = 1.0 }]
//!
//! [sweep]
//! vbar_min = 20.0
//! vbar_max = 30.0
//! vbar_step = 0.5
//! gap = 4.0
//! arrival_fractions = [1.0, 0.75]
//!
//! [simulate]
//! mode = "traversal"
//! duration_slots = 2000000
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use platoon_access::mopso::SwarmConfig;
use platoon_access::sim::{BackoffModel, SimMode};
use platoon_access::{LaneScenario, NetworkParams};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    #[default]
    Optimize,
    Sweep,
    Simulate,
    Verify,
    Pareto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scenario {
    pub lanes: Vec<LaneScenario>,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            lanes: vec![LaneScenario::new(26.5, 1.0), LaneScenario::new(22.5, 1.0)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub vbar_min: f64,
    pub vbar_max: f64,
    pub vbar_step: f64,
    /// Velocity difference between the faster and the slower lane.
    pub gap: f64,
    pub arrival_fractions: Vec<f64>,
    /// Window used for the untuned comparison columns.
    pub standard_window: u32,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            vbar_min: 20.0,
            vbar_max: 30.0,
            vbar_step: 0.5,
            gap: 4.0,
            arrival_fractions: vec![1.0, 0.75],
            standard_window: 128,
        }
    }
}

impl SweepSpec {
    /// Grid values `vbar_min + k·step`, rounded to nine decimals.
    pub fn grid(&self) -> Vec<f64> {
        let n = ((self.vbar_max - self.vbar_min) / self.vbar_step + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|k| ((self.vbar_min + k as f64 * self.vbar_step) * 1e9).round() / 1e9)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateSpec {
    pub mode: SimMode,
    pub duration_slots: u64,
    /// Windows to simulate; optimized for the scenario when absent.
    pub windows: Option<Vec<u32>>,
    /// Vehicles per lane in snapshot mode; taken from the geometry when absent.
    pub lane_counts: Option<Vec<usize>>,
    pub backoff_model: BackoffModel,
}

impl Default for SimulateSpec {
    fn default() -> Self {
        SimulateSpec {
            mode: SimMode::Snapshot,
            duration_slots: 2_000_000,
            windows: None,
            lane_counts: None,
            backoff_model: BackoffModel::FrozenCounter,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(skip)]
    pub command: Command,
    pub seed: u64,
    pub network: NetworkParams,
    pub swarm: SwarmConfig,
    pub scenario: Scenario,
    pub sweep: SweepSpec,
    pub simulate: SimulateSpec,
    pub output: OutputSpec,
}

impl ExperimentSpec {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string().trim_end().to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Swarm settings with the experiment seed applied.
    pub fn swarm_config(&self) -> SwarmConfig {
        SwarmConfig {
            seed: self.seed,
            ..self.swarm.clone()
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        self.network.validate().map_err(|e| CliError::config("network", e))?;
        self.swarm.validate().map_err(|e| CliError::config("swarm", e))?;
        let p = &self.network;
        match self.command {
            Command::Optimize | Command::Pareto | Command::Simulate => {
                if self.scenario.lanes.is_empty() {
                    return Err(CliError::Config("scenario.lanes: at least one lane is required".into()));
                }
                for (i, l) in self.scenario.lanes.iter().enumerate() {
                    l.validate(p)
                        .map_err(|e| CliError::config(&format!("scenario.lanes[{i}]"), e))?;
                }
            }
            Command::Sweep | Command::Verify => {}
        }
        if self.command == Command::Sweep {
            let s = &self.sweep;
            let bad = |field: &str, why: String| Err(CliError::Config(format!("sweep.{field}: {why}")));
            if !(s.vbar_step > 0.0) {
                return bad("vbar_step", "must be positive".into());
            }
            if !(s.vbar_min <= s.vbar_max) {
                return bad("vbar_max", "must not be below vbar_min".into());
            }
            if s.vbar_min < p.min_velocity || s.vbar_max > p.max_velocity {
                return bad(
                    "vbar_min",
                    format!("range must lie within [{}, {}]", p.min_velocity, p.max_velocity),
                );
            }
            if !(s.gap >= 0.0 && s.gap < p.max_velocity - p.min_velocity) {
                return bad(
                    "gap",
                    format!("must lie in [0, {}) so some lane pair fits the velocity range", p.max_velocity - p.min_velocity),
                );
            }
            if s.arrival_fractions.is_empty() {
                return bad("arrival_fractions", "need at least one value".into());
            }
            if let Some(f) = s.arrival_fractions.iter().find(|f| !(**f > 0.0 && **f <= 1.0)) {
                return bad("arrival_fractions", format!("{f} outside (0, 1]"));
            }
            if s.standard_window < 1 {
                return bad("standard_window", "must be at least 1".into());
            }
        }
        if self.command == Command::Simulate {
            let s = &self.simulate;
            if s.duration_slots < 1 {
                return Err(CliError::Config("simulate.duration_slots: must be positive".into()));
            }
            let lanes = self.scenario.lanes.len();
            if let Some(w) = &s.windows {
                if w.len() != lanes || w.iter().any(|&x| x < 2) {
                    return Err(CliError::Config(format!(
                        "simulate.windows: need {lanes} windows of at least 2"
                    )));
                }
            }
            if let Some(c) = &s.lane_counts {
                if c.len() != lanes || c.iter().sum::<usize>() == 0 {
                    return Err(CliError::Config(format!(
                        "simulate.lane_counts: need {lanes} counts with at least one vehicle"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_reference_setup() {
        let s = ExperimentSpec::from_toml("").unwrap();
        assert_eq!(s.network, NetworkParams::default());
        assert_eq!(s.swarm, SwarmConfig::default());
        assert_eq!(s.sweep.grid().len(), 21);
        assert_eq!(s.sweep.grid()[5], 22.5);
    }

    #[test]
    fn unknown_keys_are_reported() {
        let err = ExperimentSpec::from_toml("[network]\ncoverag = 3.0\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("coverag"), "{err}");
    }

    #[test]
    fn field_level_diagnostics() {
        let mut s = ExperimentSpec::from_toml("[network]\ncoverage = -1.0\n").unwrap();
        s.command = Command::Optimize;
        let err = s.validate().unwrap_err();
        assert!(err.to_string().contains("network.coverage"), "{err}");

        let mut s = ExperimentSpec::from_toml("[sweep]\nvbar_step = 0.0\n").unwrap();
        s.command = Command::Sweep;
        assert!(s.validate().unwrap_err().to_string().contains("sweep.vbar_step"));

        let mut s = ExperimentSpec::from_toml("[scenario]\nlanes = [{ velocity = 35.0, arrival_fraction = 1.0 }]\n").unwrap();
        s.command = Command::Optimize;
        assert!(s.validate().unwrap_err().to_string().contains("scenario.lanes[0]"));
    }

    #[test]
    fn enum_spellings() {
        let s = ExperimentSpec::from_toml(
            "[swarm]\ninertia_schedule = \"exponential-increase\"\ngrid_mode = \"mesh-div\"\n[simulate]\nmode = \"traversal\"\nbackoff_model = \"memoryless\"\n[output]\nformat = \"json\"\n",
        )
        .unwrap();
        assert_eq!(s.simulate.mode, SimMode::Traversal);
        assert_eq!(s.output.format, Format::Json);
    }
}

//! Slotted simulation of fixed-window random access to the base station.
//!
//! Each vehicle holds a back-off counter drawn uniformly from
//! `[0, W0 − 1]`. Counters drop by one per idle slot and hold while the
//! channel is busy. A vehicle whose counter reaches zero transmits for
//! `tx_slots` slots; a lone transmitter delivers a packet generated when it
//! seized the channel, so the receiver's age for that link falls to the
//! transmission time. Simultaneous transmitters collide and redraw from the
//! same window.
//!
//! Two modes share the engine: a fixed population (`Snapshot`) that
//! measures ages and attempt probabilities, and platoons streaming through
//! the coverage (`Traversal`) that measures packets per crossing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::dcf::{transmission_probability, WindowAssignment};
use crate::error::{check_len, Error, Result};
use crate::geometry::{intra_platoon_spacing, max_arrival_rate};
use crate::params::{LaneScenario, NetworkParams};

/// Runs shorter than this many transmissions are flagged in the result.
pub const SHORT_RUN_FACTOR: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SimMode {
    #[default]
    Snapshot,
    Traversal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum CollisionHandling {
    #[default]
    RedrawSameWindow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum BackoffModel {
    /// Counters persist across busy periods.
    #[default]
    FrozenCounter,
    /// Every vehicle redraws a geometric counter with success probability
    /// `2 / (W0 + 1)` at the start of each contention period.
    Memoryless,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub mode: SimMode,
    pub duration_slots: u64,
    pub windows: WindowAssignment,
    /// Vehicles per lane (snapshot mode).
    pub lane_counts: Vec<usize>,
    /// Lane velocities and arrival fractions (traversal mode).
    pub lanes: Vec<LaneScenario>,
    pub tx_slots: u64,
    pub seed: u64,
    pub collision_handling: CollisionHandling,
    pub backoff_model: BackoffModel,
    /// Leading share of the run excluded from age averages.
    pub warmup_fraction: f64,
    pub params: NetworkParams,
}

impl SimConfig {
    pub fn snapshot(
        windows: WindowAssignment,
        lane_counts: Vec<usize>,
        params: &NetworkParams,
        duration_slots: u64,
        seed: u64,
    ) -> Self {
        SimConfig {
            mode: SimMode::Snapshot,
            duration_slots,
            windows,
            lane_counts,
            lanes: Vec::new(),
            tx_slots: params.tx_slots(),
            seed,
            collision_handling: CollisionHandling::RedrawSameWindow,
            backoff_model: BackoffModel::FrozenCounter,
            warmup_fraction: 0.1,
            params: params.clone(),
        }
    }

    pub fn traversal(
        windows: WindowAssignment,
        lanes: Vec<LaneScenario>,
        params: &NetworkParams,
        duration_slots: u64,
        seed: u64,
    ) -> Self {
        SimConfig {
            mode: SimMode::Traversal,
            lanes,
            lane_counts: Vec::new(),
            ..Self::snapshot(windows, Vec::new(), params, duration_slots, seed)
        }
    }

    pub fn lane_total(&self) -> usize {
        match self.mode {
            SimMode::Snapshot => self.lane_counts.len(),
            SimMode::Traversal => self.lanes.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.tx_slots < 1 {
            return Err(Error::invalid("tx_slots", "must be at least 1"));
        }
        if self.duration_slots < 1 {
            return Err(Error::invalid("duration_slots", "must be at least 1"));
        }
        if !(0.0..1.0).contains(&self.warmup_fraction) {
            return Err(Error::invalid("warmup_fraction", "must lie in [0, 1)"));
        }
        if self.windows.0.iter().any(|&w| w < 1) {
            return Err(Error::invalid("windows", "every window must be at least 1"));
        }
        if self.lane_total() == 0 {
            return Err(Error::Empty("lane list"));
        }
        check_len(self.lane_total(), self.windows.0.len())?;
        match self.mode {
            SimMode::Snapshot => {
                if self.lane_counts.iter().sum::<usize>() == 0 {
                    return Err(Error::invalid("lane_counts", "need at least one vehicle"));
                }
            }
            SimMode::Traversal => {
                self.params.validate()?;
                for l in &self.lanes {
                    l.validate(&self.params)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    /// Time-average receiver age per vehicle link, seconds (snapshot only).
    pub per_link_mean_age: Vec<f64>,
    pub network_mean_age: Option<f64>,
    pub per_vehicle_lane: Vec<usize>,
    pub per_vehicle_success_count: Vec<u64>,
    pub per_vehicle_collision_count: Vec<u64>,
    /// Attempts per contention slot seen by the lane's vehicles.
    pub empirical_tau: Vec<f64>,
    pub tau_std_error: Vec<f64>,
    /// Attempts per second of idle channel, per vehicle.
    pub effective_backoff_rate: Vec<f64>,
    pub channel_busy_fraction: f64,
    /// Share of attempts that collided.
    pub collision_fraction: f64,
    pub idle_slots: u64,
    pub success_events: u64,
    pub collision_events: u64,
    pub total_slots: u64,
    /// Mean successful packets per completed crossing (traversal only).
    pub lane_mean_packets: Vec<f64>,
    pub lane_packets_std_error: Vec<f64>,
    pub completed_traversals: Vec<usize>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
struct Station {
    lane: usize,
    window: u32,
    entry: i64,
    exit: i64,
    counter: u64,
    idle_seen: u64,
    successes: u64,
    collisions: u64,
    reset_at: f64,
    age_at_reset: f64,
    area: f64,
}

impl Station {
    fn new(lane: usize, window: u32, entry: i64, exit: i64) -> Self {
        Station {
            lane,
            window,
            entry,
            exit,
            counter: 0,
            idle_seen: 0,
            successes: 0,
            collisions: 0,
            reset_at: 0.0,
            age_at_reset: 0.0,
            area: 0.0,
        }
    }

    /// Adds the age area on `[max(reset, from), upto]`.
    fn accrue(&mut self, from: f64, upto: f64) {
        let a = self.reset_at.max(from);
        if upto > a {
            let age_a = self.age_at_reset + (a - self.reset_at);
            let age_b = self.age_at_reset + (upto - self.reset_at);
            self.area += 0.5 * (age_a + age_b) * (upto - a);
        }
    }
}

#[derive(Debug, Clone, Default)]
struct LaneTally {
    attempts: u64,
    cycle_sum: f64,
    cycle_sq_sum: f64,
    idle_seen: u64,
}

struct Engine<'a> {
    cfg: &'a SimConfig,
    rng: ChaCha8Rng,
    geometric: Vec<Geometric>,
    stations: Vec<Station>,
    active: Vec<usize>,
    next_entry: usize,
    t: i64,
    warm: f64,
    track_age: bool,
    idle_slots: u64,
    busy_slots: u64,
    success_events: u64,
    collision_events: u64,
    tally: Vec<LaneTally>,
}

impl<'a> Engine<'a> {
    fn new(cfg: &'a SimConfig, stations: Vec<Station>, track_age: bool) -> Result<Self> {
        let geometric = cfg
            .windows
            .0
            .iter()
            .map(|&w| {
                let tau = transmission_probability(w)?;
                Geometric::new(tau).map_err(|e| Error::Domain(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Engine {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            geometric,
            stations,
            active: Vec::new(),
            next_entry: 0,
            t: 0,
            warm: (cfg.warmup_fraction * cfg.duration_slots as f64).floor(),
            track_age,
            idle_slots: 0,
            busy_slots: 0,
            success_events: 0,
            collision_events: 0,
            tally: vec![LaneTally::default(); cfg.windows.0.len()],
        })
    }

    fn draw(&mut self, idx: usize) {
        let st = &self.stations[idx];
        let c = match self.cfg.backoff_model {
            BackoffModel::FrozenCounter => self.rng.random_range(0..st.window as u64),
            BackoffModel::Memoryless => self.geometric[st.lane].sample(&mut self.rng),
        };
        self.stations[idx].counter = c;
    }

    fn update_population(&mut self) {
        let t = self.t;
        let stations = &self.stations;
        self.active.retain(|&i| stations[i].exit > t);
        while self.next_entry < self.stations.len() && self.stations[self.next_entry].entry <= t {
            let i = self.next_entry;
            self.next_entry += 1;
            if self.stations[i].exit > t {
                self.active.push(i);
                self.draw(i);
            }
        }
    }

    fn next_change(&self, end: i64) -> i64 {
        let entry = self.stations.get(self.next_entry).map_or(i64::MAX, |s| s.entry);
        let exit = self.active.iter().map(|&i| self.stations[i].exit).min().unwrap_or(i64::MAX);
        entry.min(exit).min(end)
    }

    fn idle(&mut self, slots: u64) {
        for &i in &self.active {
            let st = &mut self.stations[i];
            st.counter -= slots;
            st.idle_seen += slots;
        }
        self.idle_slots += slots;
        self.t += slots as i64;
    }

    fn run(&mut self, end: i64) {
        let tx = self.cfg.tx_slots;
        while self.t < end {
            self.update_population();
            if self.cfg.backoff_model == BackoffModel::Memoryless {
                for k in 0..self.active.len() {
                    self.draw(self.active[k]);
                }
            }
            let limit = self.next_change(end);
            let Some(m) = self.active.iter().map(|&i| self.stations[i].counter).min() else {
                self.idle((limit - self.t) as u64);
                continue;
            };
            if self.t + m as i64 >= limit {
                self.idle((limit - self.t) as u64);
                continue;
            }
            self.idle(m);
            let senders: Vec<usize> = self
                .active
                .iter()
                .copied()
                .filter(|&i| self.stations[i].counter == 0)
                .collect();
            let done = self.t + tx as i64;
            if let [k] = senders[..] {
                self.success_events += 1;
                let st = &mut self.stations[k];
                if st.exit >= done {
                    st.successes += 1;
                }
                if self.track_age {
                    st.accrue(self.warm, done as f64);
                    st.reset_at = done as f64;
                    st.age_at_reset = tx as f64;
                }
            } else {
                self.collision_events += 1;
                for &k in &senders {
                    self.stations[k].collisions += 1;
                }
            }
            if self.cfg.backoff_model == BackoffModel::Memoryless {
                // the others passed on this slot too; their counters are redrawn
                for &i in &self.active {
                    if self.stations[i].counter > 0 {
                        self.stations[i].idle_seen += 1;
                    }
                }
            }
            for &k in &senders {
                let st = &mut self.stations[k];
                let cycle = (st.idle_seen + 1) as f64;
                let tally = &mut self.tally[st.lane];
                tally.attempts += 1;
                tally.cycle_sum += cycle;
                tally.cycle_sq_sum += cycle * cycle;
                tally.idle_seen += st.idle_seen;
                st.idle_seen = 0;
                self.draw(k);
            }
            self.busy_slots += tx;
            self.t = done;
        }
    }

    fn finish(mut self) -> SimResult {
        let total = self.t as f64;
        let cfg = self.cfg;
        let slot = cfg.params.slot_time;
        let mut warnings = Vec::new();
        if cfg.duration_slots < SHORT_RUN_FACTOR * cfg.tx_slots {
            warnings.push(format!(
                "duration of {} slots is below {} transmissions",
                cfg.duration_slots, SHORT_RUN_FACTOR
            ));
        }
        let (per_link_mean_age, network_mean_age) = if self.track_age {
            let span = total - self.warm;
            let ages: Vec<f64> = self
                .stations
                .iter_mut()
                .map(|s| {
                    s.accrue(self.warm, total);
                    s.area / span * slot
                })
                .collect();
            let mean = ages.iter().sum::<f64>() / ages.len() as f64;
            (ages, Some(mean))
        } else {
            (Vec::new(), None)
        };
        let mut empirical_tau = Vec::new();
        let mut tau_std_error = Vec::new();
        let mut effective_backoff_rate = Vec::new();
        for t in &self.tally {
            let a = t.attempts as f64;
            if t.attempts == 0 {
                empirical_tau.push(f64::NAN);
                tau_std_error.push(f64::NAN);
                effective_backoff_rate.push(f64::NAN);
                continue;
            }
            let mean = t.cycle_sum / a;
            let var = (t.cycle_sq_sum / a - mean * mean).max(0.0);
            let tau = 1.0 / mean;
            empirical_tau.push(tau);
            tau_std_error.push(tau * tau * (var / a).sqrt());
            effective_backoff_rate.push(if t.idle_seen > 0 {
                a / (t.idle_seen as f64 * slot)
            } else {
                f64::INFINITY
            });
        }
        let attempts: u64 = self.tally.iter().map(|t| t.attempts).sum();
        let collided: u64 = self.stations.iter().map(|s| s.collisions).sum();
        let (lane_mean_packets, lane_packets_std_error, completed_traversals) =
            if cfg.mode == SimMode::Traversal {
                traversal_stats(&self.stations, cfg.lanes.len(), self.t)
            } else {
                (Vec::new(), Vec::new(), Vec::new())
            };
        SimResult {
            per_link_mean_age,
            network_mean_age,
            per_vehicle_lane: self.stations.iter().map(|s| s.lane).collect(),
            per_vehicle_success_count: self.stations.iter().map(|s| s.successes).collect(),
            per_vehicle_collision_count: self.stations.iter().map(|s| s.collisions).collect(),
            empirical_tau,
            tau_std_error,
            effective_backoff_rate,
            channel_busy_fraction: self.busy_slots as f64 / total,
            collision_fraction: if attempts > 0 { collided as f64 / attempts as f64 } else { 0.0 },
            idle_slots: self.idle_slots,
            success_events: self.success_events,
            collision_events: self.collision_events,
            total_slots: self.t as u64,
            lane_mean_packets,
            lane_packets_std_error,
            completed_traversals,
            warnings,
        }
    }
}

fn traversal_stats(stations: &[Station], lanes: usize, end: i64) -> (Vec<f64>, Vec<f64>, Vec<usize>) {
    let mut means = Vec::with_capacity(lanes);
    let mut errors = Vec::with_capacity(lanes);
    let mut counts = Vec::with_capacity(lanes);
    for lane in 0..lanes {
        let packets: Vec<f64> = stations
            .iter()
            .filter(|s| s.lane == lane && s.entry >= 0 && s.exit <= end)
            .map(|s| s.successes as f64)
            .collect();
        let n = packets.len() as f64;
        let mean = packets.iter().sum::<f64>() / n;
        let var = if packets.len() > 1 {
            packets.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            f64::NAN
        };
        means.push(mean);
        errors.push((var / n).sqrt());
        counts.push(packets.len());
    }
    (means, errors, counts)
}

/// Fixed population for the whole run, lane-major vehicle order.
pub fn run_snapshot(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    if config.mode != SimMode::Snapshot {
        return Err(Error::invalid("mode", "run_snapshot needs snapshot mode"));
    }
    let stations: Vec<Station> = config
        .lane_counts
        .iter()
        .enumerate()
        .flat_map(|(lane, &n)| {
            let w = config.windows.0[lane];
            (0..n).map(move |_| Station::new(lane, w, 0, i64::MAX))
        })
        .collect();
    let mut engine = Engine::new(config, stations, true)?;
    engine.run(config.duration_slots as i64);
    Ok(engine.finish())
}

/// Platoons enter each lane at their arrival rate with a random phase and
/// leave after crossing the coverage. Vehicles already inside at the start
/// or still inside at the end are excluded from the per-crossing counts.
pub fn run_traversal(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    if config.mode != SimMode::Traversal {
        return Err(Error::invalid("mode", "run_traversal needs traversal mode"));
    }
    let p = &config.params;
    let slot = p.slot_time;
    let horizon = config.duration_slots as f64 * slot;
    let mut phase_rng = ChaCha8Rng::seed_from_u64(config.seed);
    phase_rng.set_stream(1);
    let mut stations = Vec::new();
    for (lane, l) in config.lanes.iter().enumerate() {
        let rate = l.arrival_fraction * max_arrival_rate(l.velocity, p)?;
        let period = 1.0 / rate;
        let gap = (p.vehicle_length + intra_platoon_spacing(l.velocity, p)?) / l.velocity;
        let crossing = p.coverage / l.velocity;
        let phase = phase_rng.random::<f64>() * period;
        let first = -((crossing + p.platoon_size as f64 * gap) / period).ceil() as i64 - 1;
        let mut j = first;
        loop {
            let head = phase + j as f64 * period;
            if head > horizon {
                break;
            }
            for q in 0..p.platoon_size {
                let entry = head + q as f64 * gap;
                let exit = entry + crossing;
                if exit > 0.0 && entry <= horizon {
                    stations.push(Station::new(
                        lane,
                        config.windows.0[lane],
                        (entry / slot).round() as i64,
                        (exit / slot).round() as i64,
                    ));
                }
            }
            j += 1;
        }
    }
    stations.sort_by_key(|s| (s.entry, s.lane));
    let mut engine = Engine::new(config, stations, false)?;
    engine.run(config.duration_slots as i64);
    Ok(engine.finish())
}

/// Dispatch on `config.mode`.
pub fn simulate(config: &SimConfig) -> Result<SimResult> {
    match config.mode {
        SimMode::Snapshot => run_snapshot(config),
        SimMode::Traversal => run_traversal(config),
    }
}

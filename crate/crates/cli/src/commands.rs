use rayon::prelude::*;

use platoon_access::aoi::network_average_age;
use platoon_access::dcf::{transmission_probability, ShsRates, WindowAssignment};
use platoon_access::fairness::{lane_fairness_index, network_fairness_index};
use platoon_access::geometry::{lane_counts, lane_geometry};
use platoon_access::mopso::{self, SwarmResult};
use platoon_access::params::lane_pair;
use platoon_access::sim::{simulate, SimConfig, SimMode};
use platoon_access::{LaneScenario, NetworkParams};

use crate::config::ExperimentSpec;
use crate::error::CliResult;
use crate::table::{Cell, Table};

fn standard_age(windows: &[u32], counts: &[usize], p: &NetworkParams) -> platoon_access::Result<f64> {
    Ok(network_average_age(&ShsRates::from_windows(windows, counts, p)?)?.network_age)
}

/// Optimum for the configured scenario, one row per lane.
pub fn optimize(spec: &ExperimentSpec) -> CliResult<(Table, SwarmResult)> {
    let p = &spec.network;
    let lanes = &spec.scenario.lanes;
    let res = mopso::run(lanes, p, &spec.swarm_config())?;
    let counts = lane_counts(lanes, p)?;
    let n = lanes.len();
    let mut t = Table::new([
        "lane",
        "velocity",
        "arrival_fraction",
        "vehicles",
        "window",
        "fairness_deviation",
        "k_index",
        "k_network",
        "network_age",
        "archive_size",
    ]);
    let k_net = network_fairness_index(p.reference_velocity, p.reference_window as f64, p.coverage)?;
    for (i, l) in lanes.iter().enumerate() {
        let w = res.optimum.0[i];
        t.push(vec![
            (i + 1).into(),
            l.velocity.into(),
            l.arrival_fraction.into(),
            counts[i].into(),
            w.into(),
            res.objective[i].into(),
            lane_fairness_index(l.velocity, w as f64, p.coverage)?.into(),
            k_net.into(),
            res.objective[n].into(),
            res.archive.len().into(),
        ]);
    }
    Ok((t, res))
}

/// Archive rows with the selected optimum flagged.
pub fn archive_table(res: &SwarmResult) -> Table {
    let lanes = res.optimum.0.len();
    let mut cols: Vec<String> = (1..=lanes).map(|i| format!("f_k_{i}")).collect();
    cols.push("f_age".into());
    cols.extend((1..=lanes).map(|i| format!("window_{i}")));
    cols.push("optimal".into());
    let mut t = Table::new(cols);
    let mut members: Vec<_> = res.archive.members().iter().collect();
    members.sort_by(|a, b| a.windows.cmp(&b.windows));
    for m in members {
        let mut row: Vec<Cell> = m.objective.iter().map(|&f| f.into()).collect();
        row.extend(m.windows.iter().map(|&w| Cell::from(w)));
        row.push((m.windows == res.optimum.0).into());
        t.push(row);
    }
    t
}

pub fn pareto(spec: &ExperimentSpec) -> CliResult<Table> {
    let res = mopso::run(&spec.scenario.lanes, &spec.network, &spec.swarm_config())?;
    Ok(archive_table(&res))
}

pub const SWEEP_COLUMNS: [&str; 22] = [
    "vbar",
    "arrival_fraction",
    "lane",
    "velocity",
    "window_opt",
    "window_standard",
    "k_index_opt",
    "k_index_standard",
    "k_network",
    "fairness_deviation_opt",
    "fairness_deviation_standard",
    "intra_spacing",
    "inter_spacing",
    "arrival_rate",
    "vehicles",
    "network_vehicles",
    "age_opt",
    "age_standard",
    "f_age_opt",
    "archive_size",
    "seed",
    "error",
];

struct PointOutcome {
    rows: Vec<Vec<Cell>>,
}

fn sweep_point(spec: &ExperimentSpec, vbar: f64, fraction: f64, seed: u64) -> PointOutcome {
    let p = &spec.network;
    let s = &spec.sweep;
    let lanes = lane_pair(vbar, s.gap, fraction);
    let k_net = network_fairness_index(p.reference_velocity, p.reference_window as f64, p.coverage).ok();
    let k_std: Vec<Option<f64>> = lanes
        .iter()
        .map(|l| lane_fairness_index(l.velocity, s.standard_window as f64, p.coverage).ok())
        .collect();
    let result = solve_point(spec, &lanes, seed);
    let rows = lanes
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let mut row: Vec<Cell> = vec![
                vbar.into(),
                fraction.into(),
                (i + 1).into(),
                l.velocity.into(),
            ];
            let dev = |k: Option<f64>| k.zip(k_net).map(|(a, b)| (a - b).abs());
            match &result {
                Ok(pt) => {
                    let g = &pt.geometry[i];
                    row.extend([
                        pt.windows[i].into(),
                        s.standard_window.into(),
                        pt.k_opt[i].into(),
                        k_std[i].into(),
                        k_net.into(),
                        dev(Some(pt.k_opt[i])).into(),
                        dev(k_std[i]).into(),
                        g.intra_spacing.into(),
                        g.inter_spacing.into(),
                        g.arrival_rate.into(),
                        g.vehicles.into(),
                        pt.network_vehicles.into(),
                        pt.age_opt.into(),
                        pt.age_standard.into(),
                        pt.f_age.into(),
                        pt.archive_size.into(),
                        seed.into(),
                        Cell::Empty,
                    ]);
                }
                Err(e) => {
                    row.extend([
                        Cell::Empty,
                        s.standard_window.into(),
                        Cell::Empty,
                        k_std[i].into(),
                        k_net.into(),
                        Cell::Empty,
                        dev(k_std[i]).into(),
                    ]);
                    row.extend(std::iter::repeat_n(Cell::Empty, 9));
                    row.push(seed.into());
                    row.push(e.to_string().into());
                }
            }
            row
        })
        .collect();
    PointOutcome { rows }
}

struct SolvedPoint {
    windows: Vec<u32>,
    k_opt: Vec<f64>,
    geometry: Vec<platoon_access::geometry::LaneGeometry>,
    network_vehicles: usize,
    age_opt: f64,
    age_standard: f64,
    f_age: f64,
    archive_size: usize,
}

fn solve_point(spec: &ExperimentSpec, lanes: &[LaneScenario], seed: u64) -> platoon_access::Result<SolvedPoint> {
    let p = &spec.network;
    for l in lanes {
        l.validate(p)?;
    }
    let geometry = lanes
        .iter()
        .map(|l| lane_geometry(l, p))
        .collect::<platoon_access::Result<Vec<_>>>()?;
    let counts: Vec<usize> = geometry.iter().map(|g| g.vehicles).collect();
    let cfg = mopso::SwarmConfig {
        seed,
        ..spec.swarm.clone()
    };
    let res = mopso::run(lanes, p, &cfg)?;
    let windows = res.optimum.0.clone();
    let k_opt = lanes
        .iter()
        .zip(&windows)
        .map(|(l, &w)| lane_fairness_index(l.velocity, w as f64, p.coverage))
        .collect::<platoon_access::Result<Vec<_>>>()?;
    let standard = vec![spec.sweep.standard_window; lanes.len()];
    Ok(SolvedPoint {
        age_opt: standard_age(&windows, &counts, p)?,
        age_standard: standard_age(&standard, &counts, p)?,
        f_age: res.objective[lanes.len()],
        archive_size: res.archive.len(),
        network_vehicles: counts.iter().sum(),
        windows,
        k_opt,
        geometry,
    })
}

/// Grid points in output order: arrival fraction outer, average velocity inner.
pub fn sweep_points(spec: &ExperimentSpec) -> Vec<(f64, f64)> {
    let grid = spec.sweep.grid();
    spec.sweep
        .arrival_fractions
        .iter()
        .flat_map(|&f| grid.iter().map(move |&v| (v, f)))
        .collect()
}

/// Every grid point runs with seed `master ^ index`; rows keep grid order.
pub fn sweep(spec: &ExperimentSpec) -> CliResult<Table> {
    let points = sweep_points(spec);
    let outcomes: Vec<PointOutcome> = points
        .par_iter()
        .enumerate()
        .map(|(i, &(v, f))| sweep_point(spec, v, f, spec.seed ^ i as u64))
        .collect();
    let mut t = Table::new(SWEEP_COLUMNS);
    for o in outcomes {
        for row in o.rows {
            t.push(row);
        }
    }
    Ok(t)
}

/// Simulated windows: configured, or optimized for the scenario.
pub fn simulation_windows(spec: &ExperimentSpec) -> CliResult<WindowAssignment> {
    match &spec.simulate.windows {
        Some(w) => Ok(WindowAssignment(w.clone())),
        None => Ok(mopso::run(&spec.scenario.lanes, &spec.network, &spec.swarm_config())?.optimum),
    }
}

pub fn simulate_cmd(spec: &ExperimentSpec) -> CliResult<Table> {
    let p = &spec.network;
    let lanes = &spec.scenario.lanes;
    let windows = simulation_windows(spec)?;
    let counts = match &spec.simulate.lane_counts {
        Some(c) => c.clone(),
        None => lane_counts(lanes, p)?,
    };
    let mut cfg = match spec.simulate.mode {
        SimMode::Snapshot => {
            SimConfig::snapshot(windows.clone(), counts.clone(), p, spec.simulate.duration_slots, spec.seed)
        }
        SimMode::Traversal => {
            SimConfig::traversal(windows.clone(), lanes.clone(), p, spec.simulate.duration_slots, spec.seed)
        }
    };
    cfg.backoff_model = spec.simulate.backoff_model;
    let r = simulate(&cfg)?;
    let analytic = if counts.iter().all(|&c| c > 0) {
        let rates = ShsRates::from_windows(&windows.0, &counts, p)?;
        Some(network_average_age(&rates)?)
    } else {
        None
    };
    let mut t = Table::new([
        "lane",
        "velocity",
        "window",
        "vehicles",
        "tau_expected",
        "tau_empirical",
        "tau_std_error",
        "effective_backoff_rate",
        "lane_mean_age",
        "lane_analytic_age",
        "packets_per_traversal",
        "packets_std_error",
        "completed_traversals",
        "network_mean_age",
        "network_analytic_age",
        "channel_busy_fraction",
        "collision_fraction",
        "total_slots",
    ]);
    for (i, l) in lanes.iter().enumerate() {
        let lane_age = if r.per_link_mean_age.is_empty() {
            None
        } else {
            let ages: Vec<f64> = r
                .per_vehicle_lane
                .iter()
                .zip(&r.per_link_mean_age)
                .filter(|(lane, _)| **lane == i)
                .map(|(_, a)| *a)
                .collect();
            (!ages.is_empty()).then(|| ages.iter().sum::<f64>() / ages.len() as f64)
        };
        let traversal = cfg.mode == SimMode::Traversal;
        t.push(vec![
            (i + 1).into(),
            l.velocity.into(),
            windows.0[i].into(),
            counts[i].into(),
            transmission_probability(windows.0[i])?.into(),
            r.empirical_tau[i].into(),
            r.tau_std_error[i].into(),
            r.effective_backoff_rate[i].into(),
            lane_age.into(),
            analytic
                .as_ref()
                .filter(|_| !traversal)
                .map(|a| a.per_lane_age[i])
                .into(),
            traversal.then(|| r.lane_mean_packets[i]).into(),
            traversal.then(|| r.lane_packets_std_error[i]).into(),
            traversal.then(|| r.completed_traversals[i]).into(),
            r.network_mean_age.into(),
            analytic.as_ref().filter(|_| !traversal).map(|a| a.network_age).into(),
            r.channel_busy_fraction.into(),
            r.collision_fraction.into(),
            r.total_slots.into(),
        ]);
    }
    Ok(t)
}

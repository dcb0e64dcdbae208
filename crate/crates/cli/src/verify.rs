//! Self-checks run by the `verify` command.
//!
//! Each check recomputes a model quantity by an independent route and
//! reports pass or fail with a short detail line. A check named in
//! `perturb` feeds a deliberately wrong value into its own comparison, which
//! must then fail.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use platoon_access::aoi::{markov_oracle, symmetric_age, ShsInstance};
use platoon_access::dcf::{collision_probability, min_window_lower_bound, service_rate, transmission_probability};
use platoon_access::fairness::{fair_window, fairness_objectives};
use platoon_access::geometry::inter_platoon_spacing;
use platoon_access::geometry::max_arrival_rate;
use platoon_access::mopso::{self, dominates};
use platoon_access::params::lane_pair;
use platoon_access::sim::{simulate, SimConfig};
use platoon_access::NetworkParams;

use crate::config::ExperimentSpec;
use crate::table::Table;

pub const CHECKS: [&str; 8] = [
    "oracle-equivalence",
    "hand-values",
    "collision-enumeration",
    "lower-bound",
    "fair-windows",
    "equal-windows",
    "archive-dominance",
    "sim-accounting",
];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

type Check = fn(&ExperimentSpec, bool) -> Result<String, String>;

fn check_fn(name: &str) -> Check {
    match name {
        "oracle-equivalence" => oracle_equivalence,
        "hand-values" => hand_values,
        "collision-enumeration" => collision_enumeration,
        "lower-bound" => lower_bound,
        "fair-windows" => fair_windows,
        "equal-windows" => equal_windows,
        "archive-dominance" => archive_dominance,
        "sim-accounting" => sim_accounting,
        _ => unreachable!("unknown check {name}"),
    }
}

pub fn is_check(name: &str) -> bool {
    CHECKS.contains(&name)
}

pub fn run_checks(spec: &ExperimentSpec, perturb: Option<&str>) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&name| {
            let r = check_fn(name)(spec, perturb == Some(name));
            let (passed, detail) = match r {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome { name, passed, detail }
        })
        .collect()
}

pub fn outcome_table(outcomes: &[CheckOutcome]) -> Table {
    let mut t = Table::new(["check", "passed", "detail"]);
    for o in outcomes {
        t.push(vec![o.name.into(), o.passed.into(), o.detail.clone().into()]);
    }
    t
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn oracle_equivalence(spec: &ExperimentSpec, perturb: bool) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut worst = 0.0f64;
    for case in 0..200 {
        let n = rng.random_range(1..=6usize);
        let mut draw = || 10f64.powf(rng.random_range(-1.0..3.0));
        let backoff: Vec<f64> = (0..n).map(|_| draw()).collect();
        let service: Vec<f64> = (0..n).map(|_| draw()).collect();
        let inst = ShsInstance::new(backoff, service).map_err(|e| e.to_string())?;
        let oracle = markov_oracle(&inst).map_err(|e| format!("case {case}: {e}"))?;
        let mut closed = inst.link_ages();
        if perturb {
            closed[0] *= 1.0 + 1e-6;
        }
        for (a, b) in closed.iter().zip(&oracle.link_ages) {
            worst = worst.max(rel(*a, *b));
        }
    }
    let d = format!("200 instances, worst relative gap {worst:.2e}");
    if worst <= 1e-9 {
        Ok(d)
    } else {
        Err(d)
    }
}

fn hand_values(spec: &ExperimentSpec, perturb: bool) -> Result<String, String> {
    let p = &spec.network;
    let mut bad = Vec::new();
    let w = if perturb { 129 } else { 128 };
    let tau = transmission_probability(w).map_err(|e| e.to_string())?;
    if tau != 2.0 / 129.0 {
        bad.push(format!("tau(128) = {tau}"));
    }
    let v = 25.0;
    let lam = max_arrival_rate(v, p).map_err(|e| e.to_string())?;
    let rw = inter_platoon_spacing(v, lam, p).map_err(|e| e.to_string())?;
    if (rw - 58.370).abs() > 1e-3 {
        bad.push(format!("inter-platoon spacing at 25 m/s = {rw}"));
    }
    let two = ShsInstance::new(vec![2.0, 2.0], vec![1.0, 1.0]).map_err(|e| e.to_string())?;
    let age = two.network_age();
    if (age - 3.3).abs() > 1e-15 * 3.3 {
        bad.push(format!("two-link age = {age}"));
    }
    if bad.is_empty() {
        Ok(format!("tau {tau:.9}, spacing {rw:.4} m, two-link age {age}"))
    } else {
        Err(bad.join("; "))
    }
}

fn exact_busy(lane: usize, windows: &[u32], counts: &[usize]) -> BigRational {
    let tau = |w: u32| BigRational::new(2.into(), (w + 1).into());
    let mut others = Vec::new();
    for (j, (&w, &n)) in windows.iter().zip(counts).enumerate() {
        let k = if j == lane { n - 1 } else { n };
        others.extend(std::iter::repeat_n(tau(w), k));
    }
    let mut busy = BigRational::zero();
    for mask in 1u32..(1 << others.len()) {
        let mut prob = BigRational::one();
        for (b, t) in others.iter().enumerate() {
            prob *= if mask >> b & 1 == 1 { t.clone() } else { BigRational::one() - t };
        }
        busy += prob;
    }
    busy
}

fn collision_enumeration(_: &ExperimentSpec, perturb: bool) -> Result<String, String> {
    let windows = [5u32, 64];
    let mut cases = 0;
    for a in 0..=6usize {
        for b in 0..=(10 - a) {
            let counts = [a, b];
            for lane in (0..2).filter(|&l| counts[l] > 0) {
                let mut enum_counts = counts;
                if perturb && a + b > 1 {
                    enum_counts[lane] += 1;
                }
                let exact = exact_busy(lane, &windows, &enum_counts).to_f64().unwrap_or(f64::NAN);
                let closed = collision_probability(lane, &windows, &counts).map_err(|e| e.to_string())?;
                if (closed - exact).abs() > 1e-15 * exact.max(f64::MIN_POSITIVE) && closed != exact {
                    return Err(format!("counts {counts:?} lane {lane}: {closed} vs {exact}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} lane/population cases up to 10 vehicles"))
}

fn lower_bound(spec: &ExperimentSpec, perturb: bool) -> Result<String, String> {
    let cap = spec.network.collision_cap;
    let mut checked = 0;
    for n1 in 0..6usize {
        for n2 in 1..6usize {
            let counts = [n1, n2];
            let worst = |w: u32| {
                (0..2)
                    .filter(|&l| counts[l] > 0)
                    .map(|l| collision_probability(l, &[w, w], &counts).unwrap_or(1.0))
                    .fold(0.0, f64::max)
            };
            let scan = (2..=spec.network.window_ub).find(|&w| worst(w) <= cap);
            let mut got = min_window_lower_bound(&counts, cap, spec.network.window_ub).ok();
            if perturb {
                got = got.map(|w| w + 1);
            }
            if got != scan {
                return Err(format!("counts {counts:?}: search {got:?}, scan {scan:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} populations match a linear scan at cap {cap}"))
}

fn fair_windows(spec: &ExperimentSpec, perturb: bool) -> Result<String, String> {
    let p = &spec.network;
    let mut worst = 0.0f64;
    for k in 0..=10 {
        let vbar = 22.0 + 0.5 * k as f64;
        let lanes = lane_pair(vbar, 4.0, 1.0);
        let mut windows: Vec<f64> = lanes.iter().map(|l| fair_window(l.velocity, p)).collect();
        if perturb {
            windows[0] += 1e-3;
        }
        let f = fairness_objectives(&lanes, &windows, p).map_err(|e| e.to_string())?;
        worst = f.iter().copied().fold(worst, f64::max);
    }
    let d = format!("largest deviation at fair real windows {worst:.2e}");
    if worst < 1e-12 {
        Ok(d)
    } else {
        Err(d)
    }
}

fn compositions(n: usize, total: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 1 {
        if total >= min {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    let mut first = min;
    while first + min * (n as u32 - 1) <= total {
        prefix.push(first);
        compositions(n - 1, total - first, min, prefix, out);
        prefix.pop();
        first += 1;
    }
}

fn equal_windows(spec: &ExperimentSpec, perturb: bool) -> Result<String, String> {
    let p = &spec.network;
    let hs = service_rate(p.tx_time).map_err(|e| e.to_string())?;
    let mut vectors = 0;
    for n in 2..=4usize {
        for mean in 3..=16u32 {
            let mut reference = vec![mean; n];
            if perturb {
                reference[0] += 1;
                reference[1] -= 1;
            }
            let base = symmetric_age(hs, &reference, p.slot_time).map_err(|e| e.to_string())?;
            let mut all = Vec::new();
            compositions(n, mean * n as u32, 2, &mut Vec::new(), &mut all);
            for w in &all {
                let a = symmetric_age(hs, w, p.slot_time).map_err(|e| e.to_string())?;
                if a < base * (1.0 - 1e-12) {
                    return Err(format!("{w:?} beats {reference:?}: {a} < {base}"));
                }
                vectors += 1;
            }
        }
    }
    Ok(format!("{vectors} window vectors, none below the equal split"))
}

fn archive_dominance(spec: &ExperimentSpec, perturb: bool) -> Result<String, String> {
    let res = mopso::run(&spec.scenario.lanes, &spec.network, &spec.swarm_config()).map_err(|e| e.to_string())?;
    let mut objectives: Vec<Vec<f64>> = res.archive.members().iter().map(|m| m.objective.clone()).collect();
    if perturb {
        let worse = objectives[0].iter().map(|f| f + 1.0).collect();
        objectives.push(worse);
    }
    for (i, a) in objectives.iter().enumerate() {
        for (j, b) in objectives.iter().enumerate() {
            if i != j && dominates(a, b) {
                return Err(format!("member {i} dominates member {j}"));
            }
        }
    }
    Ok(format!("{} members mutually non-dominated", objectives.len()))
}

fn sim_accounting(spec: &ExperimentSpec, perturb: bool) -> Result<String, String> {
    let p: &NetworkParams = &spec.network;
    let cfg = SimConfig::snapshot(
        platoon_access::dcf::WindowAssignment(vec![16, 32]),
        vec![3, 2],
        p,
        200_000,
        spec.seed,
    );
    let r = simulate(&cfg).map_err(|e| e.to_string())?;
    let tx = p.tx_slots();
    let mut idle = r.idle_slots;
    if perturb {
        idle += 1;
    }
    let busy = tx * (r.success_events + r.collision_events);
    if idle + busy == r.total_slots {
        Ok(format!("{} slots = {idle} idle + {busy} busy", r.total_slots))
    } else {
        Err(format!("{} slots but {idle} idle + {busy} busy", r.total_slots))
    }
}

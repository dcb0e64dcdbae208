//! 802.11 DCF access quantities in the collision-free regime.
//!
//! With a single back-off stage a vehicle draws its counter uniformly from
//! `[0, W0 - 1]`, so it attempts in a slot with probability `2/(W0 + 1)` and
//! spends `(W0 - 1)/2` slots on average backing off.

use serde::{Deserialize, Serialize};

use crate::error::{check_index, check_len, Error, Result};
use crate::params::NetworkParams;

/// One minimum contention window per lane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WindowAssignment(pub Vec<u32>);

impl WindowAssignment {
    pub fn new(windows: Vec<u32>, params: &NetworkParams) -> Result<Self> {
        let w = WindowAssignment(windows);
        w.validate(params)?;
        Ok(w)
    }

    pub fn uniform(window: u32, lanes: usize) -> Self {
        WindowAssignment(vec![window; lanes])
    }

    pub fn validate(&self, params: &NetworkParams) -> Result<()> {
        check_len(params.lane_count, self.0.len())?;
        for &w in &self.0 {
            if w < params.window_lb || w > params.window_ub {
                return Err(Error::invalid(
                    "windows",
                    format!("{w} outside [{}, {}]", params.window_lb, params.window_ub),
                ));
            }
        }
        Ok(())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

/// Lane-level back-off and service rates with the lane populations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShsRates {
    pub backoff_rates: Vec<f64>,
    pub service_rates: Vec<f64>,
    pub lane_counts: Vec<usize>,
}

impl ShsRates {
    pub fn new(backoff_rates: Vec<f64>, service_rates: Vec<f64>, lane_counts: Vec<usize>) -> Result<Self> {
        check_len(backoff_rates.len(), service_rates.len())?;
        check_len(backoff_rates.len(), lane_counts.len())?;
        if backoff_rates.is_empty() {
            return Err(Error::Empty("lane rates"));
        }
        for &r in backoff_rates.iter().chain(&service_rates) {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::Domain(format!("rate {r} must be positive")));
            }
        }
        if lane_counts.iter().sum::<usize>() == 0 {
            return Err(Error::Empty("vehicle population"));
        }
        Ok(ShsRates {
            backoff_rates,
            service_rates,
            lane_counts,
        })
    }

    /// Rates implied by integer windows, with every lane served at `1/Ts`.
    pub fn from_windows(windows: &[u32], counts: &[usize], params: &NetworkParams) -> Result<Self> {
        let backoff = windows
            .iter()
            .map(|&w| backoff_rate(w as f64, params.slot_time))
            .collect::<Result<Vec<_>>>()?;
        let h = service_rate(params.tx_time)?;
        ShsRates::new(backoff, vec![h; windows.len()], counts.to_vec())
    }

    pub fn lanes(&self) -> usize {
        self.backoff_rates.len()
    }

    pub fn vehicles(&self) -> usize {
        self.lane_counts.iter().sum()
    }
}

pub fn transmission_probability(window: u32) -> Result<f64> {
    if window < 1 {
        return Err(Error::Domain("window must be at least 1".into()));
    }
    Ok(2.0 / (window as f64 + 1.0))
}

/// Probability that a transmission from `lane` overlaps at least one other.
pub fn collision_probability(lane: usize, windows: &[u32], counts: &[usize]) -> Result<f64> {
    check_len(windows.len(), counts.len())?;
    check_index(lane, windows.len())?;
    if counts[lane] == 0 {
        return Err(Error::Domain(format!("lane {lane} has no vehicles")));
    }
    let mut idle = 1.0;
    for (j, (&w, &n)) in windows.iter().zip(counts).enumerate() {
        let others = if j == lane { n - 1 } else { n };
        if others > 0 {
            idle *= (1.0 - transmission_probability(w)?).powi(others as i32);
        }
    }
    Ok(1.0 - idle)
}

/// Smallest common window keeping every populated lane at or below `cap`.
pub fn min_window_lower_bound(counts: &[usize], cap: f64, window_ub: u32) -> Result<u32> {
    if counts.iter().sum::<usize>() == 0 {
        return Err(Error::Empty("vehicle population"));
    }
    if !(cap > 0.0 && cap < 1.0) {
        return Err(Error::Domain(format!("collision cap {cap} outside (0, 1)")));
    }
    let worst = |w: u32| -> Result<f64> {
        let windows = vec![w; counts.len()];
        let mut worst = 0.0f64;
        for lane in 0..counts.len() {
            if counts[lane] > 0 {
                worst = worst.max(collision_probability(lane, &windows, counts)?);
            }
        }
        Ok(worst)
    };
    let mut best = worst(window_ub)?;
    if best > cap {
        return Err(Error::Infeasible {
            reason: format!("no window up to {window_ub} keeps collisions below {cap}"),
            best_violation: best - cap,
        });
    }
    // collision probability is monotone in the window: bisect on [2, ub]
    let (mut lo, mut hi) = (2u32, window_ub);
    if worst(lo)? <= cap {
        return Ok(lo);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let p = worst(mid)?;
        if p <= cap {
            hi = mid;
            best = p;
        } else {
            lo = mid;
        }
    }
    debug_assert!(best <= cap);
    Ok(hi)
}

/// Back-off rate `1 / T_b` with mean back-off `T_b = (W0 - 1)/2 · T_slot`.
///
/// Takes a real window so optimizer positions can be evaluated off-grid.
pub fn backoff_rate(window: f64, slot_time: f64) -> Result<f64> {
    if !(window >= 2.0) {
        return Err(Error::Domain(format!("window {window} gives zero back-off time")));
    }
    if !(slot_time > 0.0) {
        return Err(Error::Domain("slot time must be positive".into()));
    }
    Ok(2.0 / ((window - 1.0) * slot_time))
}

pub fn service_rate(tx_time: f64) -> Result<f64> {
    if !(tx_time > 0.0) {
        return Err(Error::Domain(format!("transmission time {tx_time} must be positive")));
    }
    Ok(1.0 / tx_time)
}

/// Data rate of one vehicle on `lane`, its attempt probability's share of
/// the network rate `S · C_bit / N_bit`.
pub fn per_vehicle_tx_rate(
    lane: usize,
    windows: &[u32],
    counts: &[usize],
    params: &NetworkParams,
) -> Result<f64> {
    check_len(windows.len(), counts.len())?;
    check_index(lane, windows.len())?;
    let missing = |f: &'static str| Error::invalid(f, "required for transmission rates");
    let s = params.normalized_throughput.ok_or_else(|| missing("normalized_throughput"))?;
    let c = params.channel_bitrate.ok_or_else(|| missing("channel_bitrate"))?;
    let n = params.packet_bits.ok_or_else(|| missing("packet_bits"))?;
    let mut total = 0.0;
    for (&w, &k) in windows.iter().zip(counts) {
        total += k as f64 * transmission_probability(w)?;
    }
    if total == 0.0 {
        return Err(Error::Empty("vehicle population"));
    }
    Ok(s * c / n * transmission_probability(windows[lane])? / total)
}

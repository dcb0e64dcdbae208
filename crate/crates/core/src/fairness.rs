//! Fairness indices: equal data volume per coverage traversal.
//!
//! A vehicle on lane `i` moves `2R / (v_i (W0_i + 1))` worth of attempts
//! through the coverage (up to lane-independent constants). Lanes are
//! treated fairly when each lane's index matches the network index formed
//! from the reference velocity and window.

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::params::{LaneScenario, NetworkParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FairnessReport {
    pub lane_indices: Vec<f64>,
    pub network_index: f64,
    /// `|lane index - network index|` per lane.
    pub deviations: Vec<f64>,
}

fn index(velocity: f64, window: f64, coverage: f64) -> Result<f64> {
    if !(velocity > 0.0) {
        return Err(Error::Domain(format!("velocity {velocity} must be positive")));
    }
    if !(window >= 1.0) {
        return Err(Error::Domain(format!("window {window} must be at least 1")));
    }
    if !(coverage > 0.0) {
        return Err(Error::Domain(format!("coverage {coverage} must be positive")));
    }
    Ok(2.0 * coverage / (velocity * (window + 1.0)))
}

/// Per-lane index `2R / (v (W0 + 1))`. Windows may be real-valued.
pub fn lane_fairness_index(velocity: f64, window: f64, coverage: f64) -> Result<f64> {
    index(velocity, window, coverage)
}

/// Network index from the average velocity and average window.
pub fn network_fairness_index(mean_velocity: f64, mean_window: f64, coverage: f64) -> Result<f64> {
    index(mean_velocity, mean_window, coverage)
}

pub fn fairness_report(
    lanes: &[LaneScenario],
    windows: &[f64],
    params: &NetworkParams,
) -> Result<FairnessReport> {
    check_len(lanes.len(), windows.len())?;
    let network_index = network_fairness_index(
        params.reference_velocity,
        params.reference_window as f64,
        params.coverage,
    )?;
    let lane_indices = lanes
        .iter()
        .zip(windows)
        .map(|(l, &w)| lane_fairness_index(l.velocity, w, params.coverage))
        .collect::<Result<Vec<_>>>()?;
    let deviations = lane_indices.iter().map(|k| (k - network_index).abs()).collect();
    Ok(FairnessReport {
        lane_indices,
        network_index,
        deviations,
    })
}

/// One fairness objective per lane: its deviation from the network index.
pub fn fairness_objectives(
    lanes: &[LaneScenario],
    windows: &[f64],
    params: &NetworkParams,
) -> Result<Vec<f64>> {
    Ok(fairness_report(lanes, windows, params)?.deviations)
}

/// Real window giving lane velocity `velocity` exactly the network index.
pub fn fair_window(velocity: f64, params: &NetworkParams) -> f64 {
    params.reference_velocity * (params.reference_window as f64 + 1.0) / velocity - 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lane_index_values() {
        assert_relative_eq!(lane_fairness_index(25.0, 128.0, 200.0).unwrap(), 400.0 / 3225.0);
        assert!((lane_fairness_index(25.0, 128.0, 200.0).unwrap() - 0.124031).abs() < 1e-6);
        assert_eq!(lane_fairness_index(20.0, 159.0, 200.0).unwrap(), 0.125);
        // doubling v and halving (W0+1) leaves the index unchanged
        assert_relative_eq!(
            lane_fairness_index(50.0, 63.5, 200.0).unwrap(),
            lane_fairness_index(25.0, 128.0, 200.0).unwrap(),
            max_relative = 1e-15
        );
        assert!(lane_fairness_index(0.0, 128.0, 200.0).is_err());
        assert!(lane_fairness_index(25.0, 0.0, 200.0).is_err());
        assert!(lane_fairness_index(25.0, 128.0, -1.0).is_err());
    }

    #[test]
    fn network_index_values() {
        assert!((network_fairness_index(25.0, 128.0, 200.0).unwrap() - 0.124031).abs() < 1e-6);
        assert_eq!(
            network_fairness_index(23.0, 100.0, 200.0).unwrap(),
            lane_fairness_index(23.0, 100.0, 200.0).unwrap()
        );
        assert!((network_fairness_index(24.5, 128.0, 200.0).unwrap() - 0.126562).abs() < 1e-6);
    }

    #[test]
    fn objectives_vanish_on_fair_windows() {
        let p = NetworkParams::default();
        let lanes = [LaneScenario::new(26.5, 1.0), LaneScenario::new(22.5, 1.0)];
        let w: Vec<f64> = lanes.iter().map(|l| fair_window(l.velocity, &p)).collect();
        for f in fairness_objectives(&lanes, &w, &p).unwrap() {
            assert!(f < 1e-12);
        }
        let single = [LaneScenario::new(25.0, 1.0)];
        assert_eq!(fairness_objectives(&single, &[128.0], &p).unwrap(), vec![0.0]);
    }

    #[test]
    fn objectives_at_standard_window() {
        let p = NetworkParams {
            reference_velocity: 24.5,
            ..NetworkParams::default()
        };
        let lanes = [LaneScenario::new(26.5, 1.0), LaneScenario::new(22.5, 1.0)];
        let f = fairness_objectives(&lanes, &[128.0, 128.0], &p).unwrap();
        let k: f64 = 400.0 / (24.5 * 129.0);
        assert_relative_eq!(f[0], (400.0 / (26.5 * 129.0) - k).abs(), max_relative = 1e-14);
        assert_relative_eq!(f[1], (400.0 / (22.5 * 129.0) - k).abs(), max_relative = 1e-14);
        assert!(fairness_objectives(&lanes, &[128.0], &p).is_err());
    }

    #[test]
    fn report_deviations_are_exact() {
        let p = NetworkParams::default();
        let lanes = [LaneScenario::new(27.0, 1.0), LaneScenario::new(23.0, 0.75)];
        let r = fairness_report(&lanes, &[100.0, 180.0], &p).unwrap();
        for (d, k) in r.deviations.iter().zip(&r.lane_indices) {
            assert_eq!(*d, (k - r.network_index).abs());
        }
    }
}

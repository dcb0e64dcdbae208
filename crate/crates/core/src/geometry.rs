//! Platoon spacing, arrival rates and vehicle counts inside the coverage.
//!
//! A lane carries platoons of `platoon_size` vehicles travelling at a common
//! velocity. The intra-platoon spacing follows a velocity-dependent spacing
//! law that diverges at the maximum velocity; the inter-platoon spacing is
//! whatever the arrival rate leaves over. The coverage then holds a whole
//! number of platoon intervals plus one partial platoon.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{LaneScenario, NetworkParams};

/// Slack applied before rounding real-valued ratios to counts.
pub const ROUNDING_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaneGeometry {
    pub intra_spacing: f64,
    pub inter_spacing: f64,
    /// Length of a complete platoon, bumper to bumper.
    pub platoon_length: f64,
    /// Platoon length plus the following inter-platoon gap.
    pub interval: f64,
    pub complete_platoons: usize,
    /// Coverage left over after the complete intervals.
    pub incomplete_length: f64,
    pub vehicles_complete: usize,
    pub vehicles_incomplete: usize,
    pub vehicles: usize,
    pub arrival_rate: f64,
    /// Time a vehicle needs to cross the coverage.
    pub traversal_time: f64,
}

fn floor_count(x: f64) -> usize {
    (x + ROUNDING_SLACK).floor().max(0.0) as usize
}

fn ceil_count(x: f64) -> usize {
    (x - ROUNDING_SLACK).ceil().max(0.0) as usize
}

/// Intra-platoon spacing `(r0 + v·Th) / sqrt(1 − (v/v0)^4)`.
pub fn intra_platoon_spacing(velocity: f64, params: &NetworkParams) -> Result<f64> {
    if !(velocity >= 0.0) {
        return Err(Error::Domain(format!("velocity {velocity} must be non-negative")));
    }
    if velocity >= params.max_velocity {
        return Err(Error::Domain(format!(
            "velocity {velocity} reaches the spacing-law singularity at {}",
            params.max_velocity
        )));
    }
    let ratio = velocity / params.max_velocity;
    let denom = (1.0 - ratio.powi(4)).sqrt();
    Ok((params.min_intra_spacing + velocity * params.time_headway) / denom)
}

/// Largest platoon arrival rate, reached when platoons are packed with the
/// inter-platoon gap equal to the intra-platoon one.
pub fn max_arrival_rate(velocity: f64, params: &NetworkParams) -> Result<f64> {
    let rw = intra_platoon_spacing(velocity, params)?;
    Ok(velocity / (params.platoon_size as f64 * (params.vehicle_length + rw)))
}

fn platoon_length(rw: f64, params: &NetworkParams) -> f64 {
    (params.platoon_size as f64 - 1.0) * (params.vehicle_length + rw) + params.vehicle_length
}

/// Inter-platoon spacing implied by an absolute arrival rate.
///
/// Rates above the maximum are rejected. At the maximum the result is the
/// intra-platoon spacing.
pub fn inter_platoon_spacing(velocity: f64, arrival_rate: f64, params: &NetworkParams) -> Result<f64> {
    let rw = intra_platoon_spacing(velocity, params)?;
    if !(arrival_rate > 0.0) {
        return Err(Error::Domain(format!("arrival rate {arrival_rate} must be positive")));
    }
    let lambda_max = velocity / (params.platoon_size as f64 * (params.vehicle_length + rw));
    if arrival_rate > lambda_max * (1.0 + 1e-12) {
        return Err(Error::Constraint(format!(
            "arrival rate {arrival_rate} exceeds maximum {lambda_max} at velocity {velocity}"
        )));
    }
    if arrival_rate >= lambda_max {
        return Ok(rw);
    }
    Ok((velocity / arrival_rate - platoon_length(rw, params)).max(rw))
}

pub fn lane_geometry(lane: &LaneScenario, params: &NetworkParams) -> Result<LaneGeometry> {
    lane.validate(params)?;
    let v = lane.velocity;
    let rw = intra_platoon_spacing(v, params)?;
    let lambda = lane.arrival_fraction * max_arrival_rate(v, params)?;
    let rs = inter_platoon_spacing(v, lambda, params)?;
    let dw = platoon_length(rw, params);
    let interval = dw + rs;
    let complete = floor_count(params.coverage / interval);
    let incomplete_length = (params.coverage - complete as f64 * interval).max(0.0);
    let vehicles_complete = complete * params.platoon_size;
    let vehicles_incomplete =
        ceil_count(incomplete_length / (params.vehicle_length + rw)).min(params.platoon_size);
    Ok(LaneGeometry {
        intra_spacing: rw,
        inter_spacing: rs,
        platoon_length: dw,
        interval,
        complete_platoons: complete,
        incomplete_length,
        vehicles_complete,
        vehicles_incomplete,
        vehicles: vehicles_complete + vehicles_incomplete,
        arrival_rate: lambda,
        traversal_time: params.coverage / v,
    })
}

pub fn network_vehicle_count(lanes: &[LaneGeometry]) -> Result<usize> {
    if lanes.is_empty() {
        return Err(Error::Empty("lane list"));
    }
    Ok(lanes.iter().map(|g| g.vehicles).sum())
}

/// Per-lane vehicle counts for a whole scenario.
pub fn lane_counts(lanes: &[LaneScenario], params: &NetworkParams) -> Result<Vec<usize>> {
    lanes
        .iter()
        .map(|l| lane_geometry(l, params).map(|g| g.vehicles))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn table() -> NetworkParams {
        NetworkParams::default()
    }

    #[test]
    fn spacing_at_standstill_is_minimum() {
        assert_eq!(intra_platoon_spacing(0.0, &table()).unwrap(), 2.0);
    }

    #[test]
    fn spacing_at_25() {
        // 42 / sqrt(1 - (25/30)^4)
        let rw = intra_platoon_spacing(25.0, &table()).unwrap();
        assert!((rw - 58.370).abs() < 1e-3, "{rw}");
    }

    #[test]
    fn spacing_singular_at_max_velocity() {
        assert!(matches!(intra_platoon_spacing(30.0, &table()), Err(Error::Domain(_))));
        assert!(intra_platoon_spacing(31.0, &table()).is_err());
        assert!(intra_platoon_spacing(-1.0, &table()).is_err());
    }

    #[test]
    fn max_rate_values() {
        let p = table();
        let l = max_arrival_rate(25.0, &p).unwrap();
        assert!((l - 0.19725).abs() < 1e-5, "{l}");
        assert_eq!(max_arrival_rate(0.0, &p).unwrap(), 0.0);
        let rw = intra_platoon_spacing(22.5, &p).unwrap();
        assert_relative_eq!(
            max_arrival_rate(22.5, &p).unwrap(),
            22.5 / (2.0 * (5.0 + rw)),
            max_relative = 1e-15
        );
    }

    #[test]
    fn inter_spacing_cases() {
        let p = table();
        let lmax = max_arrival_rate(25.0, &p).unwrap();
        let rw = intra_platoon_spacing(25.0, &p).unwrap();
        assert_eq!(inter_platoon_spacing(25.0, lmax, &p).unwrap(), rw);
        let rs = inter_platoon_spacing(25.0, 0.75 * lmax, &p).unwrap();
        assert!((rs - 100.62).abs() < 5e-3, "{rs}");
        // same value through the rearranged form
        let dw = 5.0 + (rw + 5.0);
        assert_relative_eq!(rs, rw / 0.75 + dw * (1.0 / 0.75 - 1.0), max_relative = 1e-12);
        assert!(matches!(
            inter_platoon_spacing(25.0, 1.1 * lmax, &p),
            Err(Error::Constraint(_))
        ));
    }

    #[test]
    fn lane_at_25_full_rate() {
        let g = lane_geometry(&LaneScenario::new(25.0, 1.0), &table()).unwrap();
        assert!((g.interval - 126.74).abs() < 5e-3, "{}", g.interval);
        assert_eq!(g.complete_platoons, 1);
        assert_eq!(g.vehicles_complete, 2);
        assert!((g.incomplete_length - 73.26).abs() < 5e-3);
        assert_eq!(g.vehicles_incomplete, 2);
        assert_eq!(g.vehicles, 4);
        assert_eq!(g.traversal_time, 8.0);
    }

    #[test]
    fn short_coverage_has_no_complete_platoon() {
        let p = NetworkParams {
            coverage: 100.0,
            ..table()
        };
        let g = lane_geometry(&LaneScenario::new(25.0, 1.0), &p).unwrap();
        assert_eq!(g.complete_platoons, 0);
        assert_eq!(g.vehicles_complete, 0);
        let rw = intra_platoon_spacing(25.0, &p).unwrap();
        assert_eq!(g.vehicles_incomplete, (100.0 / (5.0 + rw)).ceil() as usize);
    }

    #[test]
    fn partial_platoon_is_capped() {
        // at 0.75 of the max rate the leftover can exceed one platoon
        let p = table();
        for i in 0..=16 {
            let v = 20.0 + 0.5 * i as f64;
            let g = lane_geometry(&LaneScenario::new(v, 0.75), &p).unwrap();
            assert!(g.vehicles_incomplete <= p.platoon_size);
        }
    }

    #[test]
    fn vehicle_counts() {
        let p = table();
        let g = lane_geometry(&LaneScenario::new(25.0, 1.0), &p).unwrap();
        assert_eq!(network_vehicle_count(&[g, g]).unwrap(), 8);
        assert_eq!(network_vehicle_count(&[g]).unwrap(), 4);
        assert!(network_vehicle_count(&[]).is_err());

        let a = lane_geometry(&LaneScenario::new(26.5, 1.0), &p).unwrap();
        let b = lane_geometry(&LaneScenario::new(22.5, 1.0), &p).unwrap();
        // counts by hand: ceil(200/(5+r_w)) when the rate is maximal
        let expect = |v: f64| (200.0 / (5.0 + intra_platoon_spacing(v, &p).unwrap())).ceil() as usize;
        assert_eq!(network_vehicle_count(&[a, b]).unwrap(), expect(26.5) + expect(22.5));
    }
}

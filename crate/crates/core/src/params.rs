//! Scenario constants and per-lane traffic state.
//!
//! Every duration is in seconds, every length in metres and every rate in
//! 1/s. The defaults reproduce the two-lane highway reference scenario:
//! 200 m coverage, pairs of vehicles per platoon, 802.11 slot and
//! transmission timing, window bounds `[64, 256]` and a collision cap of
//! 0.24.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetworkParams {
    /// Base-station coverage length along the road.
    pub coverage: f64,
    pub lane_count: usize,
    /// Vehicles in a complete platoon.
    pub platoon_size: usize,
    pub vehicle_length: f64,
    /// Minimum intra-platoon spacing at standstill.
    pub min_intra_spacing: f64,
    pub time_headway: f64,
    /// Upper velocity limit; the spacing law is singular here.
    pub max_velocity: f64,
    pub min_velocity: f64,
    pub slot_time: f64,
    /// Mean duration of a successful transmission.
    pub tx_time: f64,
    pub window_lb: u32,
    pub window_ub: u32,
    /// Upper bound on the per-slot collision probability.
    pub collision_cap: f64,
    /// Network average velocity that defines the fairness target.
    pub reference_velocity: f64,
    /// Network average minimum contention window that defines the fairness target.
    pub reference_window: u32,
    pub channel_bitrate: Option<f64>,
    pub packet_bits: Option<f64>,
    /// Normalized network throughput, supplied by the caller.
    pub normalized_throughput: Option<f64>,
}

impl Default for NetworkParams {
    fn default() -> Self {
        NetworkParams {
            coverage: 200.0,
            lane_count: 2,
            platoon_size: 2,
            vehicle_length: 5.0,
            min_intra_spacing: 2.0,
            time_headway: 1.6,
            max_velocity: 30.0,
            min_velocity: 20.0,
            slot_time: 50e-6,
            tx_time: 8972e-6,
            window_lb: 64,
            window_ub: 256,
            collision_cap: 0.24,
            reference_velocity: 25.0,
            reference_window: 128,
            channel_bitrate: None,
            packet_bits: None,
            normalized_throughput: None,
        }
    }
}

fn positive(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be a positive finite number, got {value}")))
    }
}

impl NetworkParams {
    pub fn validate(&self) -> Result<()> {
        positive("coverage", self.coverage)?;
        if self.lane_count == 0 {
            return Err(Error::invalid("lane_count", "must be at least 1"));
        }
        if self.platoon_size == 0 {
            return Err(Error::invalid("platoon_size", "must be at least 1"));
        }
        positive("vehicle_length", self.vehicle_length)?;
        if !(self.min_intra_spacing.is_finite() && self.min_intra_spacing >= 0.0) {
            return Err(Error::invalid("min_intra_spacing", "must be non-negative"));
        }
        if !(self.time_headway.is_finite() && self.time_headway >= 0.0) {
            return Err(Error::invalid("time_headway", "must be non-negative"));
        }
        positive("min_velocity", self.min_velocity)?;
        positive("max_velocity", self.max_velocity)?;
        if self.min_velocity >= self.max_velocity {
            return Err(Error::invalid(
                "min_velocity",
                format!("must be below max_velocity ({})", self.max_velocity),
            ));
        }
        positive("slot_time", self.slot_time)?;
        positive("tx_time", self.tx_time)?;
        if self.slot_time >= self.tx_time {
            return Err(Error::invalid("slot_time", "must be shorter than tx_time"));
        }
        if self.window_lb < 2 {
            return Err(Error::invalid("window_lb", "must be at least 2"));
        }
        if self.window_lb > self.window_ub {
            return Err(Error::invalid(
                "window_ub",
                format!("must be at least window_lb ({})", self.window_lb),
            ));
        }
        if !(self.collision_cap > 0.0 && self.collision_cap < 1.0) {
            return Err(Error::invalid("collision_cap", "must lie in (0, 1)"));
        }
        positive("reference_velocity", self.reference_velocity)?;
        if self.reference_window < 1 {
            return Err(Error::invalid("reference_window", "must be at least 1"));
        }
        if let Some(c) = self.channel_bitrate {
            positive("channel_bitrate", c)?;
        }
        if let Some(n) = self.packet_bits {
            positive("packet_bits", n)?;
        }
        if let Some(s) = self.normalized_throughput {
            if !(s > 0.0 && s <= 1.0) {
                return Err(Error::invalid("normalized_throughput", "must lie in (0, 1]"));
            }
        }
        Ok(())
    }

    /// Transmission time expressed in whole slots (at least one).
    pub fn tx_slots(&self) -> u64 {
        ((self.tx_time / self.slot_time).round() as u64).max(1)
    }
}

/// Traffic state of one lane: common velocity and the platoon arrival rate
/// as a fraction of the largest rate the spacing law admits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaneScenario {
    pub velocity: f64,
    pub arrival_fraction: f64,
}

impl LaneScenario {
    pub fn new(velocity: f64, arrival_fraction: f64) -> Self {
        LaneScenario {
            velocity,
            arrival_fraction,
        }
    }

    pub fn validate(&self, params: &NetworkParams) -> Result<()> {
        if !(self.velocity >= params.min_velocity && self.velocity <= params.max_velocity) {
            return Err(Error::invalid(
                "velocity",
                format!(
                    "{} outside [{}, {}]",
                    self.velocity, params.min_velocity, params.max_velocity
                ),
            ));
        }
        if !(self.arrival_fraction > 0.0 && self.arrival_fraction <= 1.0) {
            return Err(Error::invalid(
                "arrival_fraction",
                format!("{} outside (0, 1]", self.arrival_fraction),
            ));
        }
        Ok(())
    }
}

/// Two lanes at `mean ± gap/2`, faster lane first.
pub fn lane_pair(mean_velocity: f64, gap: f64, arrival_fraction: f64) -> [LaneScenario; 2] {
    [
        LaneScenario::new(mean_velocity + gap / 2.0, arrival_fraction),
        LaneScenario::new(mean_velocity - gap / 2.0, arrival_fraction),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        NetworkParams::default().validate().unwrap();
        assert_eq!(NetworkParams::default().tx_slots(), 179);
    }

    #[test]
    fn rejects_inverted_window_bounds() {
        let p = NetworkParams {
            window_lb: 300,
            ..NetworkParams::default()
        };
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParameter { field: "window_ub", .. })
        ));
    }

    #[test]
    fn rejects_slot_longer_than_transmission() {
        let p = NetworkParams {
            slot_time: 1.0,
            ..NetworkParams::default()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn lane_bounds() {
        let p = NetworkParams::default();
        assert!(LaneScenario::new(25.0, 1.0).validate(&p).is_ok());
        assert!(LaneScenario::new(19.0, 1.0).validate(&p).is_err());
        assert!(LaneScenario::new(25.0, 0.0).validate(&p).is_err());
        assert!(LaneScenario::new(25.0, 1.2).validate(&p).is_err());
    }
}

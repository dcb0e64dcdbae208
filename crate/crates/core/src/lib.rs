//! Contention-window tuning for platooning vehicles sharing a roadside
//! base station.
//!
//! Vehicles on faster lanes spend less time inside the coverage, so with a
//! common minimum contention window they deliver less data per pass. This
//! crate models that access unfairness, the average age of information of
//! the uplink, and searches per-lane windows that balance the two:
//!
//! - [`geometry`]: platoon spacing and vehicle counts from lane velocities
//! - [`dcf`]: 802.11 DCF attempt, collision, back-off and service rates
//! - [`fairness`]: per-lane and network fairness indices
//! - [`aoi`]: closed-form ages and an independent Markov-chain oracle
//! - [`mopso`]: multi-objective particle swarm over the window vector
//! - [`sim`]: slotted DCF simulator used to validate the models

// `!(x > 0.0)` is used on purpose so NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aoi;
pub mod dcf;
pub mod error;
pub mod fairness;
pub mod geometry;
pub mod mopso;
pub mod params;
pub mod sim;

pub use error::{Error, Result};
pub use params::{LaneScenario, NetworkParams};

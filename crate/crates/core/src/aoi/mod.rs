//! Average age of information on the shared uplink.
//!
//! The channel is a star-shaped Markov chain: from idle (state 0) link `k`
//! captures the channel at its back-off rate `R_k`, and from state `k` the
//! channel returns to idle at the service rate `H_k`, delivering a packet
//! generated at capture. This module holds the closed-form ages of that
//! model; [`oracle`] re-derives them from a direct linear solve.

pub mod oracle;

use serde::{Deserialize, Serialize};

use crate::dcf::ShsRates;
use crate::error::{check_index, Error, Result};

pub use oracle::{markov_oracle, markov_oracle_with_cap, OracleSolution, DEFAULT_ORACLE_CAP};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgeResult {
    /// Age seen by any one vehicle of each lane, in seconds.
    pub per_lane_age: Vec<f64>,
    /// Vehicle-weighted mean over all links.
    pub network_age: f64,
    pub normalization: f64,
}

/// Per-vehicle rates: the lane rates repeated once per vehicle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShsInstance {
    pub backoff: Vec<f64>,
    pub service: Vec<f64>,
}

impl ShsInstance {
    pub fn new(backoff: Vec<f64>, service: Vec<f64>) -> Result<Self> {
        crate::error::check_len(backoff.len(), service.len())?;
        if backoff.is_empty() {
            return Err(Error::Empty("link list"));
        }
        for &r in backoff.iter().chain(&service) {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::Domain(format!("rate {r} must be positive")));
            }
        }
        Ok(ShsInstance { backoff, service })
    }

    pub fn from_rates(rates: &ShsRates) -> Self {
        let mut backoff = Vec::with_capacity(rates.vehicles());
        let mut service = Vec::with_capacity(rates.vehicles());
        for i in 0..rates.lanes() {
            for _ in 0..rates.lane_counts[i] {
                backoff.push(rates.backoff_rates[i]);
                service.push(rates.service_rates[i]);
            }
        }
        ShsInstance { backoff, service }
    }

    pub fn links(&self) -> usize {
        self.backoff.len()
    }

    pub fn normalization(&self) -> f64 {
        1.0 + self.backoff.iter().zip(&self.service).map(|(r, h)| r / h).sum::<f64>()
    }

    /// Link ages from the closed form `C/R_k + Σ_q R_q / (C H_q²)`.
    pub fn link_ages(&self) -> Vec<f64> {
        let c = self.normalization();
        let tail: f64 = self
            .backoff
            .iter()
            .zip(&self.service)
            .map(|(r, h)| r / (c * h * h))
            .sum();
        self.backoff.iter().map(|r| c / r + tail).collect()
    }

    pub fn network_age(&self) -> f64 {
        let ages = self.link_ages();
        ages.iter().sum::<f64>() / ages.len() as f64
    }
}

/// `C(R) = 1 + Σ_i n_i R_i / H_i`.
pub fn normalization_factor(rates: &ShsRates) -> f64 {
    1.0 + (0..rates.lanes())
        .map(|i| rates.lane_counts[i] as f64 * rates.backoff_rates[i] / rates.service_rates[i])
        .sum::<f64>()
}

/// Stationary distribution of the channel chain, idle state first.
pub fn steady_state_probs(instance: &ShsInstance) -> Vec<f64> {
    let c = instance.normalization();
    std::iter::once(1.0 / c)
        .chain(
            instance
                .backoff
                .iter()
                .zip(&instance.service)
                .map(|(r, h)| r / (c * h)),
        )
        .collect()
}

fn shared_tail(rates: &ShsRates, c: f64) -> f64 {
    (0..rates.lanes())
        .map(|j| {
            let h = rates.service_rates[j];
            rates.lane_counts[j] as f64 * rates.backoff_rates[j] / (c * h * h)
        })
        .sum()
}

/// Average age for any vehicle of `lane`.
pub fn link_average_age(lane: usize, rates: &ShsRates) -> Result<f64> {
    check_index(lane, rates.lanes())?;
    let c = normalization_factor(rates);
    Ok(c / rates.backoff_rates[lane] + shared_tail(rates, c))
}

pub fn network_average_age(rates: &ShsRates) -> Result<AgeResult> {
    let nv = rates.vehicles();
    if nv == 0 {
        return Err(Error::Empty("vehicle population"));
    }
    let c = normalization_factor(rates);
    let tail = shared_tail(rates, c);
    let per_lane_age: Vec<f64> = rates.backoff_rates.iter().map(|r| c / r + tail).collect();
    let first: f64 = (0..rates.lanes())
        .map(|j| rates.lane_counts[j] as f64 * c / rates.backoff_rates[j])
        .sum();
    let network_age = (first + nv as f64 * tail) / nv as f64;
    Ok(AgeResult {
        per_lane_age,
        network_age,
        normalization: c,
    })
}

/// Age under a common service rate with the idle-state term dropped from the
/// normalization, as a function of the per-vehicle windows:
/// `(1/H_s) (Σ_j Σ_k R_k / R_j + 1)`.
///
/// The expression keeps no `1/N_v` in front of the double sum, so it tracks
/// `N_v` times the exact age rather than the age itself. It is used for the
/// window-spread comparison, where that factor is common to every candidate.
pub fn symmetric_age(service_rate: f64, windows: &[u32], slot_time: f64) -> Result<f64> {
    if windows.is_empty() {
        return Err(Error::Empty("window list"));
    }
    if !(service_rate > 0.0) {
        return Err(Error::Domain("service rate must be positive".into()));
    }
    let rates = windows
        .iter()
        .map(|&w| crate::dcf::backoff_rate(w as f64, slot_time))
        .collect::<Result<Vec<_>>>()?;
    let total: f64 = rates.iter().sum();
    let spread: f64 = rates.iter().map(|r| total / r).sum();
    Ok((spread + 1.0) / service_rate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcf::ShsRates;
    use crate::params::NetworkParams;
    use approx::assert_relative_eq;

    #[test]
    fn normalization_values() {
        let tiny = ShsRates::new(vec![1e-300], vec![1.0], vec![3]).unwrap();
        assert_relative_eq!(normalization_factor(&tiny), 1.0);
        let two = ShsRates::new(vec![2.0], vec![1.0], vec![2]).unwrap();
        assert_eq!(normalization_factor(&two), 5.0);
        let p = NetworkParams::default();
        let r = ShsRates::from_windows(&[128, 128], &[4, 4], &p).unwrap();
        let expect = 1.0 + 8.0 * (2.0 / (127.0 * 50e-6)) * 8972e-6;
        assert_relative_eq!(normalization_factor(&r), expect, max_relative = 1e-14);
    }

    #[test]
    fn stationary_values() {
        let one = ShsInstance::new(vec![3.0], vec![3.0]).unwrap();
        assert_eq!(steady_state_probs(&one), vec![0.5, 0.5]);
        let two = ShsInstance::new(vec![2.0, 2.0], vec![1.0, 1.0]).unwrap();
        let pi = steady_state_probs(&two);
        assert_relative_eq!(pi[0], 0.2);
        assert_relative_eq!(pi[1], 0.4);
        assert_relative_eq!(pi[2], 0.4);
    }

    #[test]
    fn link_age_values() {
        let one = ShsRates::new(vec![1.0], vec![1.0], vec![1]).unwrap();
        assert_relative_eq!(link_average_age(0, &one).unwrap(), 2.5);
        let two = ShsRates::new(vec![2.0], vec![1.0], vec![2]).unwrap();
        assert_relative_eq!(link_average_age(0, &two).unwrap(), 3.3, max_relative = 1e-15);
        assert!(link_average_age(1, &two).is_err());
    }

    #[test]
    fn age_scales_inversely_with_rates() {
        let base = ShsRates::new(vec![3.0, 7.0], vec![1.5, 0.5], vec![2, 3]).unwrap();
        let a = 4.0;
        let scaled = ShsRates::new(vec![12.0, 28.0], vec![6.0, 2.0], vec![2, 3]).unwrap();
        for lane in 0..2 {
            assert_relative_eq!(
                link_average_age(lane, &scaled).unwrap(),
                link_average_age(lane, &base).unwrap() / a,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn network_age_values() {
        let two = ShsRates::new(vec![2.0], vec![1.0], vec![2]).unwrap();
        let r = network_average_age(&two).unwrap();
        assert_relative_eq!(r.network_age, 3.3, max_relative = 1e-15);
        assert_eq!(r.per_lane_age.len(), 1);

        let same = ShsRates::new(vec![5.0, 5.0], vec![2.0, 2.0], vec![3, 2]).unwrap();
        let r = network_average_age(&same).unwrap();
        assert_relative_eq!(r.network_age, r.per_lane_age[0], max_relative = 1e-14);
        assert_relative_eq!(r.network_age, r.per_lane_age[1], max_relative = 1e-14);
    }

    #[test]
    fn network_age_is_weighted_mean() {
        let rates = ShsRates::new(vec![3.0, 9.0, 0.5], vec![1.0, 2.0, 0.25], vec![2, 1, 4]).unwrap();
        let r = network_average_age(&rates).unwrap();
        let weighted: f64 = r
            .per_lane_age
            .iter()
            .zip(&rates.lane_counts)
            .map(|(a, &n)| a * n as f64)
            .sum::<f64>()
            / 7.0;
        assert_relative_eq!(r.network_age, weighted, max_relative = 1e-14);
        assert!(r.normalization >= 1.0);
        let inst = ShsInstance::from_rates(&rates);
        assert_relative_eq!(r.network_age, inst.network_age(), max_relative = 1e-14);
    }

    #[test]
    fn symmetric_age_values() {
        let hs = 1.0 / 8972e-6;
        for nv in 1..6 {
            let a = symmetric_age(hs, &vec![100; nv], 50e-6).unwrap();
            assert_relative_eq!(a, (nv * nv + 1) as f64 / hs, max_relative = 1e-14);
        }
        assert_relative_eq!(symmetric_age(2.0, &[64, 64], 50e-6).unwrap(), 2.5);
        let spread = symmetric_age(hs, &[65, 257], 50e-6).unwrap();
        assert!(spread > 5.0 / hs);
    }
}

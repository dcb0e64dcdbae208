//! Pareto archive with grid-based congestion.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::dominates;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchiveMember {
    pub position: Vec<f64>,
    /// Position rounded to the windows actually evaluated.
    pub windows: Vec<u32>,
    pub objective: Vec<f64>,
}

/// Mutually non-dominated solutions, unique by rounded windows.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParetoArchive {
    members: Vec<ArchiveMember>,
    grid_indices: Vec<Vec<i64>>,
}

/// Sub-region index of `position` on a grid of `resolution` cells per axis
/// spanning `[lb, ub]`. The upper bound itself lands in cell `resolution`.
pub fn grid_index(position: &[f64], resolution: usize, lb: f64, ub: f64) -> Vec<i64> {
    let span = ub - lb;
    position
        .iter()
        .map(|&p| {
            if span <= 0.0 {
                0
            } else {
                ((p - lb) * resolution as f64 / span).floor() as i64
            }
        })
        .collect()
}

fn cell_counts(indices: &[Vec<i64>]) -> Vec<usize> {
    let mut counts: HashMap<&[i64], usize> = HashMap::new();
    for idx in indices {
        *counts.entry(idx.as_slice()).or_default() += 1;
    }
    indices.iter().map(|idx| counts[idx.as_slice()]).collect()
}

/// Leader-selection probabilities `1 / n_g^alpha`, normalized, where `n_g`
/// counts the members sharing a grid cell.
pub fn selection_probabilities(indices: &[Vec<i64>], alpha: f64) -> Vec<f64> {
    let raw: Vec<f64> = cell_counts(indices)
        .into_iter()
        .map(|n| 1.0 / (n as f64).powf(alpha))
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|p| p / total).collect()
}

/// First index whose cumulative probability exceeds `draw`.
pub fn roulette_select(probs: &[f64], draw: f64) -> Result<usize> {
    if probs.is_empty() {
        return Err(Error::Empty("probability vector"));
    }
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if draw < acc {
            return Ok(i);
        }
    }
    // draw landed in the rounding gap at the top
    Ok(probs.iter().rposition(|&p| p > 0.0).unwrap_or(probs.len() - 1))
}

pub fn roulette_sample<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> Result<usize> {
    roulette_select(probs, rng.random::<f64>())
}

/// Largest of all objectives but the last, and the last one.
fn prune_key(objective: &[f64]) -> (f64, f64) {
    match objective.split_last() {
        Some((last, rest)) => (rest.iter().copied().fold(f64::NEG_INFINITY, f64::max), *last),
        None => (0.0, 0.0),
    }
}

impl ParetoArchive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn members(&self) -> &[ArchiveMember] {
        &self.members
    }

    pub fn grid_indices(&self) -> &[Vec<i64>] {
        &self.grid_indices
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Adds a candidate unless it is dominated or duplicates a member's
    /// windows; evicts members it dominates. Returns whether it was kept.
    pub fn insert(&mut self, candidate: ArchiveMember) -> bool {
        for m in &self.members {
            if m.windows == candidate.windows || dominates(&m.objective, &candidate.objective) {
                return false;
            }
        }
        self.members.retain(|m| !dominates(&candidate.objective, &m.objective));
        self.members.push(candidate);
        true
    }

    /// Recomputes the grid at `resolution` cells per axis.
    pub fn regrid(&mut self, resolution: usize, lb: f64, ub: f64) {
        self.grid_indices = self
            .members
            .iter()
            .map(|m| grid_index(&m.position, resolution, lb, ub))
            .collect();
    }

    /// Drops members until at most `cap` remain, always from the most
    /// congested cell. Within that cell the member with the largest leading
    /// objective (the worst fairness deviation) goes first, then the one
    /// with the largest last objective. `resolution` is re-evaluated after
    /// every removal.
    pub fn prune(&mut self, cap: usize, resolution: impl Fn(usize) -> usize, lb: f64, ub: f64) {
        while self.members.len() > cap.max(1) {
            self.regrid(resolution(self.members.len()), lb, ub);
            let counts = cell_counts(&self.grid_indices);
            let busiest = *counts.iter().max().expect("non-empty archive");
            let victim = (0..self.members.len())
                .filter(|&i| counts[i] == busiest)
                .max_by(|&a, &b| {
                    let (fa, ga) = prune_key(&self.members[a].objective);
                    let (fb, gb) = prune_key(&self.members[b].objective);
                    fa.total_cmp(&fb).then(ga.total_cmp(&gb)).then(a.cmp(&b))
                })
                .expect("busiest cell has a member");
            self.members.remove(victim);
        }
        self.regrid(resolution(self.members.len()), lb, ub);
    }

    pub fn selection_probabilities(&self, alpha: f64) -> Vec<f64> {
        selection_probabilities(&self.grid_indices, alpha)
    }

    /// True when no member dominates another.
    pub fn is_mutually_non_dominated(&self) -> bool {
        self.members.iter().enumerate().all(|(i, a)| {
            self.members
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !dominates(&a.objective, &b.objective))
        })
    }
}

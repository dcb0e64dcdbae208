//! Direct solve of the hybrid-system equations for every link.
//!
//! For a tagged link `k` the continuous state is `[x0, x1]`: the age at the
//! base station and the age of the packet link `k` is carrying. Each of the
//! `2 N_v` channel transitions carries a reset map; only the end of link
//! `k`'s own service changes the ages (`[x0, x1] -> [x1, 0]`). The stationary
//! correlations `v_q = E[x 1{state = q}]` satisfy, for every state `q`,
//!
//! ```text
//! v_q · (total exit rate of q) = b_q π_q + Σ_{l into q} λ_l v_{from(l)} A_l
//! ```
//!
//! with `b_q = [1, 1]` while link `k` is in service and `[1, 0]` otherwise.
//! The link age is `Σ_q v_q0`. The stationary distribution `π` comes from
//! the global balance equations, not from any closed form.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::ShsInstance;
use crate::error::{Error, Result};

/// Largest link count the dense solves accept by default.
pub const DEFAULT_ORACLE_CAP: usize = 12;

type Reset = [[f64; 2]; 2];

const IDENTITY: Reset = [[1.0, 0.0], [0.0, 1.0]];
/// `[x0, x1] -> [x1, 0]` as a right-multiplied matrix.
const DELIVER: Reset = [[0.0, 0.0], [1.0, 0.0]];

#[derive(Debug, Clone, Copy)]
struct Transition {
    from: usize,
    to: usize,
    rate: f64,
    reset: Reset,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    pub link_ages: Vec<f64>,
    /// Stationary distribution from the balance solve, idle state first.
    pub stationary: Vec<f64>,
    /// For each link, the correlation pairs `[v_q0, v_q1]` over all states.
    pub correlations: Vec<Vec<[f64; 2]>>,
}

impl OracleSolution {
    pub fn network_age(&self) -> f64 {
        self.link_ages.iter().sum::<f64>() / self.link_ages.len() as f64
    }
}

/// Transition table for tagged link `tagged` (0-based; state `k + 1` is link `k` in service).
fn transitions(instance: &ShsInstance, tagged: usize) -> Vec<Transition> {
    let n = instance.links();
    let mut out = Vec::with_capacity(2 * n);
    for k in 0..n {
        out.push(Transition {
            from: 0,
            to: k + 1,
            rate: instance.backoff[k],
            reset: IDENTITY,
        });
    }
    for k in 0..n {
        out.push(Transition {
            from: k + 1,
            to: 0,
            rate: instance.service[k],
            reset: if k == tagged { DELIVER } else { IDENTITY },
        });
    }
    out
}

fn condition_estimate(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

fn solve(m: DMatrix<f64>, rhs: DVector<f64>) -> Result<DVector<f64>> {
    let dim = m.nrows();
    let cond = condition_estimate(&m);
    if !cond.is_finite() || cond > 1e14 {
        return Err(Error::Singular { dim, condition: cond });
    }
    match m.full_piv_lu().solve(&rhs) {
        Some(x) if x.iter().all(|v| v.is_finite()) => Ok(x),
        _ => Err(Error::Singular { dim, condition: cond }),
    }
}

/// Stationary distribution from `π Q = 0`, `Σ π = 1`.
fn stationary(instance: &ShsInstance) -> Result<Vec<f64>> {
    let states = instance.links() + 1;
    let mut q = DMatrix::<f64>::zeros(states, states);
    for t in transitions(instance, usize::MAX) {
        q[(t.from, t.to)] += t.rate;
        q[(t.from, t.from)] -= t.rate;
    }
    // rows of Qᵀ are the balance equations; swap the last for normalization
    let mut a = q.transpose();
    for j in 0..states {
        a[(states - 1, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(states);
    b[states - 1] = 1.0;
    Ok(solve(a, b)?.iter().copied().collect())
}

fn link_correlations(instance: &ShsInstance, tagged: usize, pi: &[f64]) -> Result<Vec<[f64; 2]>> {
    let states = instance.links() + 1;
    let dim = 2 * states;
    let table = transitions(instance, tagged);
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    let mut rhs = DVector::<f64>::zeros(dim);
    let col = |q: usize, c: usize| 2 * q + c;
    for q in 0..states {
        let exit: f64 = table.iter().filter(|t| t.from == q).map(|t| t.rate).sum();
        let growth = if q == tagged + 1 { [1.0, 1.0] } else { [1.0, 0.0] };
        for c in 0..2 {
            let row = col(q, c);
            m[(row, col(q, c))] += exit;
            rhs[row] = growth[c] * pi[q];
            // (v_from · A)_c = Σ_d v_from,d · A[d][c]
            for t in table.iter().filter(|t| t.to == q) {
                for d in 0..2 {
                    m[(row, col(t.from, d))] -= t.rate * t.reset[d][c];
                }
            }
        }
    }
    let x = solve(m, rhs)?;
    Ok((0..states).map(|q| [x[col(q, 0)], x[col(q, 1)]]).collect())
}

pub fn markov_oracle(instance: &ShsInstance) -> Result<OracleSolution> {
    markov_oracle_with_cap(instance, DEFAULT_ORACLE_CAP)
}

pub fn markov_oracle_with_cap(instance: &ShsInstance, cap: usize) -> Result<OracleSolution> {
    let n = instance.links();
    if n == 0 {
        return Err(Error::Empty("link list"));
    }
    if n > cap {
        return Err(Error::Domain(format!("{n} links exceed the oracle cap of {cap}")));
    }
    let pi = stationary(instance)?;
    let correlations = (0..n)
        .into_par_iter()
        .map(|k| link_correlations(instance, k, &pi))
        .collect::<Result<Vec<_>>>()?;
    let link_ages = correlations
        .iter()
        .map(|v| v.iter().map(|pair| pair[0]).sum())
        .collect();
    Ok(OracleSolution {
        link_ages,
        stationary: pi,
        correlations,
    })
}

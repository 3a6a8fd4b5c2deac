//! Closed-form observables of the evolved state
//! `|ψ(t)⟩ = 𝒩 Σ_n c_n e^{-iE_n t} |n⟩`.
//!
//! For the full even+odd superposition every observable reduces to a
//! weighted sum over the stationary photon distribution
//! `p_n = 𝒩² α^{2n}/[n]_μ!`:
//!
//! * `⟨a(t)⟩  = α Σ p_n e^{-i(E_{n+1}-E_n)t}`, and `⟨X(t)⟩ = √2 Re⟨a(t)⟩`
//! * `⟨ψ(0)|ψ(t)⟩ = Σ p_n e^{-iE_n t}`
//! * `⟨K₋(t)⟩ = (α²/2) Σ p_n e^{-i(E_{n+2}-E_n)t}`
//! * `⟨K₀⟩ = Σ p_n k₀(n)`, a constant of motion
//!
//! The off-diagonal weights `α p_n` and `α² p_n / 2` are evaluated as the
//! coefficient products `𝒩² c_n c_{n+1} √[n+1]` and
//! `½ 𝒩² c_n c_{n+2} √([n+1][n+2])`, which agree for the full superposition
//! and stay correct for a parity-projected state.
//!
//! Sums run over the truncated state, so each value is the exact expectation
//! in that normalized finite vector. Accumulation is complex and
//! compensated; real parts are taken at the end.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coherent_state::CoherentState;
use crate::dunkl_algebra::{dunkl_integer, k0_eigenvalue};
use crate::error::{Error, Result};
use crate::spectrum::{energy, neighbor_gap, same_parity_gap};
use crate::summation::{CompensatedComplexSum, CompensatedSum};

/// Observable recorded in a [`TimeSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    Quadrature,
    Fidelity,
    Variance,
    K0Const,
}

impl Channel {
    pub const ALL: [Channel; 4] = [
        Channel::Quadrature,
        Channel::Fidelity,
        Channel::Variance,
        Channel::K0Const,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Channel::Quadrature => "quadrature",
            Channel::Fidelity => "fidelity",
            Channel::Variance => "variance",
            Channel::K0Const => "k0_const",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Channel::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown channel `{s}` (expected one of quadrature, fidelity, variance, k0_const)"
                ))
            })
    }
}

/// Uniform grid of `n_samples` points from `t_start` to `t_end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub n_samples: usize,
}

impl Default for TimeGrid {
    /// One full revival period at λ = 1.
    fn default() -> Self {
        Self {
            t_start: 0.0,
            t_end: 2.0 * std::f64::consts::PI,
            n_samples: 2048,
        }
    }
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, n_samples: usize) -> Result<Self> {
        let grid = Self {
            t_start,
            t_end,
            n_samples,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_start.is_finite() && self.t_end.is_finite()) {
            return Err(Error::Grid("endpoints must be finite".into()));
        }
        if self.t_end <= self.t_start {
            return Err(Error::Grid(format!(
                "t_end ({}) must exceed t_start ({})",
                self.t_end, self.t_start
            )));
        }
        if self.n_samples < 2 {
            return Err(Error::Grid(format!(
                "need at least 2 samples, got {}",
                self.n_samples
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.t_end - self.t_start) / (self.n_samples - 1) as f64
    }

    pub fn time(&self, i: usize) -> f64 {
        if i + 1 == self.n_samples {
            self.t_end
        } else {
            self.t_start + i as f64 * self.step()
        }
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_samples).map(|i| self.time(i)).collect()
    }
}

/// Sampled times plus one column per observable, in request order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub channels: IndexMap<String, Vec<f64>>,
}

impl TimeSeries {
    pub fn channel(&self, channel: Channel) -> Option<&[f64]> {
        self.channels.get(channel.name()).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// `𝒩² c_n c_{n+shift}`, formed in log space.
fn coupling_weight(state: &CoherentState, n: usize, shift: usize) -> f64 {
    let lc = state.log_coeffs();
    (lc[n] + lc[n + shift] + 2.0 * state.log_norm_const()).exp()
}

/// `⟨ψ(t)|a_μ|ψ(t)⟩`.
pub fn lowering_expectation(state: &CoherentState, t: f64) -> Complex64 {
    let params = state.params();
    let sum: CompensatedComplexSum = (0..state.n_cut())
        .map(|n| {
            let w = coupling_weight(state, n, 1) * dunkl_integer(n + 1, params.mu).sqrt();
            w * Complex64::from_polar(1.0, -neighbor_gap(n, params) * t)
        })
        .collect();
    sum.total()
}

/// `⟨X_μ(t)⟩` with `X_μ = (a_μ + a_μ†)/√2`.
pub fn quadrature_expectation(state: &CoherentState, t: f64) -> f64 {
    SQRT_2 * lowering_expectation(state, t).re
}

/// Overlap amplitude `⟨ψ(0)|ψ(t)⟩`.
pub fn survival_amplitude(state: &CoherentState, t: f64) -> Complex64 {
    let params = state.params();
    let sum: CompensatedComplexSum = state
        .probabilities()
        .iter()
        .enumerate()
        .map(|(n, &p)| p * Complex64::from_polar(1.0, -energy(n, params) * t))
        .collect();
    sum.total()
}

/// Fidelity `F(t) = |⟨ψ(0)|ψ(t)⟩|²`.
pub fn survival_probability(state: &CoherentState, t: f64) -> f64 {
    survival_amplitude(state, t).norm_sqr()
}

/// `⟨K₋(t)⟩`, phases set by the same-parity gaps `E_{n+2} - E_n`.
pub fn kminus_expectation(state: &CoherentState, t: f64) -> Complex64 {
    let params = state.params();
    let mu = params.mu;
    let sum: CompensatedComplexSum = (0..state.n_cut().saturating_sub(1))
        .map(|n| {
            let w = coupling_weight(state, n, 2)
                * (dunkl_integer(n + 1, mu) * dunkl_integer(n + 2, mu)).sqrt();
            w * Complex64::from_polar(1.0, -same_parity_gap(n, params) * t)
        })
        .collect();
    0.5 * sum.total()
}

/// `⟨K₀⟩`. Time independent since `[H, K₀] = 0`; `2⟨K₀⟩` is the collapse
/// plateau of the quadrature variance.
pub fn k0_expectation(state: &CoherentState) -> f64 {
    let mu = state.params().mu;
    let sum: CompensatedSum = state
        .probabilities()
        .iter()
        .enumerate()
        .map(|(n, &p)| p * k0_eigenvalue(n, mu))
        .collect();
    sum.total()
}

/// `(ΔX)² = 2 Re⟨K₋(t)⟩ + 2⟨K₀⟩ - ⟨X(t)⟩²`.
pub fn quadrature_variance(state: &CoherentState, t: f64) -> f64 {
    variance_with_k0(state, t, k0_expectation(state))
}

fn variance_with_k0(state: &CoherentState, t: f64, k0: f64) -> f64 {
    let x = quadrature_expectation(state, t);
    2.0 * kminus_expectation(state, t).re + 2.0 * k0 - x * x
}

/// Samples the requested channels over `grid`. Samples are independent and
/// evaluated in parallel; the output does not depend on scheduling.
pub fn evaluate_series(
    state: &CoherentState,
    grid: &TimeGrid,
    channels: &[Channel],
) -> Result<TimeSeries> {
    grid.validate()?;
    if channels.is_empty() {
        return Err(Error::Config("at least one channel is required".into()));
    }
    let mut unique: Vec<Channel> = Vec::with_capacity(channels.len());
    for &c in channels {
        if !unique.contains(&c) {
            unique.push(c);
        }
    }

    let k0 = k0_expectation(state);
    let times = grid.times();
    let rows: Vec<Vec<f64>> = times
        .par_iter()
        .map(|&t| {
            unique
                .iter()
                .map(|c| match c {
                    Channel::Quadrature => quadrature_expectation(state, t),
                    Channel::Fidelity => survival_probability(state, t),
                    Channel::Variance => variance_with_k0(state, t, k0),
                    Channel::K0Const => 2.0 * k0,
                })
                .collect()
        })
        .collect();

    let channels = unique
        .iter()
        .enumerate()
        .map(|(j, c)| (c.name().to_owned(), rows.iter().map(|r| r[j]).collect()))
        .collect();
    Ok(TimeSeries { times, channels })
}

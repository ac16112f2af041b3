//! Bat algorithm.
//!
//! Velocity and position follow `v(t) = v(t−1) + (X(t) − X_best)·f` and
//! `X(t+1) = X(t) + v(t)` with `f = f_min + (f_max − f_min)·β`. When a uniform
//! draw is at least the bat's pulse rate the candidate is replaced by a local
//! walk `X_best + ε·Ā`, `ε ~ U[−1, 1]` per dimension, `Ā` the mean loudness.
//! Bats always move to their candidate; the search context keeps the best
//! solution found. A move that does not worsen the bat's fitness is an
//! accepted improvement: it decays that bat's loudness (`A ← α·A`) and resets
//! its pulse rate to `r0·(1 − e^{−γ t})`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::hho::check_len;
use super::SearchContext;
use crate::error::{Error, Result};
use crate::search::{Agent, BoundedSpace, Objective, RandomStream};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaParams {
    pub f_min: f64,
    pub f_max: f64,
    /// Loudness decay α.
    pub loudness_decay: f64,
    /// Pulse-rate growth γ.
    pub pulse_growth: f64,
    pub initial_loudness: f64,
    pub initial_pulse: f64,
}

impl Default for BaParams {
    fn default() -> Self {
        Self {
            f_min: 0.0,
            f_max: 2.0,
            loudness_decay: 0.9,
            pulse_growth: 0.9,
            initial_loudness: 1.0,
            initial_pulse: 0.5,
        }
    }
}

impl BaParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.f_min <= self.f_max) {
            return Err(Error::config("f_min must not exceed f_max"));
        }
        if !(self.loudness_decay > 0.0 && self.loudness_decay < 1.0) {
            return Err(Error::config("loudness_decay must lie in (0, 1)"));
        }
        if !(self.pulse_growth > 0.0) {
            return Err(Error::config("pulse_growth must be positive"));
        }
        if !(self.initial_loudness > 0.0) || !(0.0..=1.0).contains(&self.initial_pulse) {
            return Err(Error::config(
                "initial_loudness must be positive and initial_pulse in [0, 1]",
            ));
        }
        Ok(())
    }

    pub fn frequency(&self, rng: &mut RandomStream) -> f64 {
        self.f_min + (self.f_max - self.f_min) * rng.random::<f64>()
    }

    /// Pulse rate after an accepted move in generation `t` (0-based).
    pub fn pulse_at(&self, t: usize) -> f64 {
        self.initial_pulse * (1.0 - (-self.pulse_growth * (t + 1) as f64).exp())
    }
}

/// Per-bat loudness and pulse rate.
#[derive(Debug, Clone, PartialEq)]
pub struct BatState {
    pub loudness: Vec<f64>,
    pub pulse: Vec<f64>,
}

impl BatState {
    pub fn new(params: &BaParams, n: usize) -> Self {
        Self {
            loudness: vec![params.initial_loudness; n],
            pulse: vec![params.initial_pulse; n],
        }
    }

    pub fn mean_loudness(&self) -> f64 {
        self.loudness.iter().sum::<f64>() / self.loudness.len() as f64
    }

    /// Records an accepted move of bat `i` in generation `t`.
    pub fn accept(&mut self, params: &BaParams, i: usize, t: usize) {
        self.loudness[i] *= params.loudness_decay;
        self.pulse[i] = params.pulse_at(t);
    }
}

/// Frequency-tuned velocity and position update. Returns
/// `(new velocity, new position)`; the position is clamped, the velocity is
/// not.
pub fn ba_update(
    position: &[f64],
    velocity: &[f64],
    best: &[f64],
    frequency: f64,
    space: &BoundedSpace,
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_len(space, position)?;
    check_len(space, velocity)?;
    check_len(space, best)?;
    let v: Vec<f64> = velocity
        .iter()
        .zip(position.iter().zip(best))
        .map(|(v, (x, b))| v + (x - b) * frequency)
        .collect();
    let mut x: Vec<f64> = position.iter().zip(&v).map(|(x, v)| x + v).collect();
    space.clamp_in_place(&mut x);
    Ok((v, x))
}

/// Random walk around `best` with half-width `scale` per dimension, clamped.
pub fn local_walk(
    best: &[f64],
    scale: f64,
    rng: &mut RandomStream,
    space: &BoundedSpace,
) -> Vec<f64> {
    let mut x: Vec<f64> = best
        .iter()
        .map(|b| b + (2.0 * rng.random::<f64>() - 1.0) * scale)
        .collect();
    space.clamp_in_place(&mut x);
    x
}

/// One generation: every bat proposes a candidate, candidates are scored
/// together, then every bat moves and loudness/pulse are updated.
pub fn ba_step<O: Objective + ?Sized>(
    ctx: &mut SearchContext<'_, O>,
    agents: &mut [Agent],
    state: &mut BatState,
    params: &BaParams,
    t: usize,
) -> Result<()> {
    let best = ctx.best().position.clone();
    let scale = state.mean_loudness();
    let mut candidates = Vec::with_capacity(agents.len());
    for (i, agent) in agents.iter_mut().enumerate() {
        let mut rng = ctx.rng(crate::search::StreamKind::Agent, t, i);
        let f = params.frequency(&mut rng);
        let (v, mut x) = ba_update(&agent.position, &agent.velocity, &best, f, ctx.space())?;
        agent.velocity = v;
        if rng.random::<f64>() >= state.pulse[i] {
            x = local_walk(&best, scale, &mut rng, ctx.space());
        }
        candidates.push(x);
    }
    let fitness = ctx.score(&candidates);
    for (i, (x, f)) in candidates.into_iter().zip(fitness).enumerate() {
        if f <= agents[i].fitness {
            state.accept(params, i, t);
        }
        agents[i].position = x;
        agents[i].fitness = f;
    }
    Ok(())
}

//! Sparrow search.
//!
//! Roles are assigned by fitness rank each generation:
//!
//! * producers (best `⌈PD·n⌉`): with alarm value `R2 < ST` the position
//!   shrinks as `X·exp(−i/(a·T))`, `a ~ U(0, 1]`, `i` the 1-based rank;
//!   otherwise `X + Q` with `Q ~ N(0, 1)` added to every dimension;
//! * scroungers, worse half (`i > n/2`): `Q·exp((X_worst − X)/i²)`;
//! * scroungers, better half: `X_P + (Σ_j |X_j − X_P,j|·A_j)/d` on every
//!   dimension, with `A_j = ±1` and `X_P` the best position after the
//!   producer phase;
//! * sentinels (`⌈SD·n⌉` sampled agents): `X_best + β·|X − X_best|`,
//!   `β ~ N(0, 1)` per dimension, when worse than the global best; otherwise
//!   `X + K·|X − X_worst|/(f − f_worst + ε)` with `K ~ U[−1, 1]`.
//!
//! Each phase is scored as one batch and every agent keeps its previous
//! position when the candidate is worse.

use rand::seq::index::sample;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::SearchContext;
use crate::error::{Error, Result};
use crate::search::{Agent, Objective, RandomStream, StreamKind};

const SENTINEL_EPS: f64 = 1e-50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SsaParams {
    /// Fraction of producers (PD).
    pub producer_fraction: f64,
    /// Fraction of sentinels (SD).
    pub sentinel_fraction: f64,
    /// Safety threshold (ST).
    pub safety_threshold: f64,
}

impl Default for SsaParams {
    fn default() -> Self {
        Self {
            producer_fraction: 0.2,
            sentinel_fraction: 0.1,
            safety_threshold: 0.8,
        }
    }
}

impl SsaParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("producer_fraction", self.producer_fraction),
            ("sentinel_fraction", self.sentinel_fraction),
            ("safety_threshold", self.safety_threshold),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::config(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(())
    }

    pub fn producers(&self, n: usize) -> usize {
        ((self.producer_fraction * n as f64).ceil() as usize).clamp(1, n)
    }

    pub fn sentinels(&self, n: usize) -> usize {
        ((self.sentinel_fraction * n as f64).ceil() as usize).clamp(1, n)
    }

    /// Objective evaluations per generation for a population of `n`.
    pub fn evals_per_generation(&self, n: usize) -> usize {
        n + self.sentinels(n)
    }
}

pub(crate) fn check_population(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::config(format!(
            "population of {n} is too small for role assignment (need at least 3)"
        )));
    }
    Ok(())
}

/// Indices sorted by ascending fitness, ties by index.
pub(crate) fn rank_order(agents: &[Agent]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..agents.len()).collect();
    order.sort_by(|&a, &b| agents[a].fitness.total_cmp(&agents[b].fitness));
    order
}

fn normal(rng: &mut RandomStream) -> f64 {
    rng.sample(StandardNormal)
}

/// Producer move for the agent of 1-based `rank`.
pub fn ssa_producer_move(
    position: &[f64],
    rank: usize,
    max_iters: usize,
    params: &SsaParams,
    rng: &mut RandomStream,
) -> Vec<f64> {
    let alarm: f64 = rng.random();
    if alarm < params.safety_threshold {
        let a = 1.0 - rng.random::<f64>();
        let shrink = (-(rank as f64) / (a * max_iters as f64)).exp();
        position.iter().map(|x| x * shrink).collect()
    } else {
        let q = normal(rng);
        position.iter().map(|x| x + q).collect()
    }
}

/// Scrounger move for the agent of 1-based `rank` in a population of `n`.
pub fn ssa_scrounger_move(
    position: &[f64],
    rank: usize,
    n: usize,
    producer_best: &[f64],
    worst: &[f64],
    rng: &mut RandomStream,
) -> Vec<f64> {
    if rank as f64 > n as f64 / 2.0 {
        let q = normal(rng);
        let r2 = (rank * rank) as f64;
        position
            .iter()
            .zip(worst)
            .map(|(x, w)| q * ((w - x) / r2).exp())
            .collect()
    } else {
        let d = position.len() as f64;
        let shift: f64 = position
            .iter()
            .zip(producer_best)
            .map(|(x, p)| {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                (x - p).abs() * sign
            })
            .sum::<f64>()
            / d;
        producer_best.iter().map(|p| p + shift).collect()
    }
}

/// Sentinel move given the agent's fitness and the global best/worst.
pub fn ssa_sentinel_move(
    agent: &Agent,
    best: &Agent,
    worst: &Agent,
    rng: &mut RandomStream,
) -> Vec<f64> {
    if agent.fitness > best.fitness {
        agent
            .position
            .iter()
            .zip(&best.position)
            .map(|(x, b)| b + normal(rng) * (x - b).abs())
            .collect()
    } else {
        let k = 2.0 * rng.random::<f64>() - 1.0;
        let denom = (agent.fitness - worst.fitness) + SENTINEL_EPS;
        agent
            .position
            .iter()
            .zip(&worst.position)
            .map(|(x, w)| x + k * ((x - w).abs() / denom))
            .collect()
    }
}

fn greedy<O: Objective + ?Sized>(
    ctx: &mut SearchContext<'_, O>,
    agents: &mut [Agent],
    indices: &[usize],
    mut candidates: Vec<Vec<f64>>,
) {
    for x in candidates.iter_mut() {
        ctx.space().clamp_in_place(x);
    }
    let fitness = ctx.score(&candidates);
    for ((&i, x), f) in indices.iter().zip(candidates).zip(fitness) {
        if f <= agents[i].fitness {
            agents[i].position = x;
            agents[i].fitness = f;
        }
    }
}

/// One SSA generation over an evaluated population.
pub fn ssa_step<O: Objective + ?Sized>(
    ctx: &mut SearchContext<'_, O>,
    agents: &mut [Agent],
    params: &SsaParams,
    t: usize,
) -> Result<()> {
    let n = agents.len();
    check_population(n)?;
    let max_iters = ctx.config().max_iters;
    let mut rngs = ctx.agent_rngs(t, n);
    let order = rank_order(agents);
    let worst = agents[order[n - 1]].position.clone();
    let n_producers = params.producers(n);

    let producers = &order[..n_producers];
    let moves: Vec<Vec<f64>> = producers
        .iter()
        .enumerate()
        .map(|(r, &i)| ssa_producer_move(&agents[i].position, r + 1, max_iters, params, &mut rngs[i]))
        .collect();
    greedy(ctx, agents, producers, moves);

    let lead = crate::search::agent::argmin(agents.iter().map(|a| a.fitness)).unwrap_or(0);
    let producer_best = agents[lead].position.clone();
    let scroungers = &order[n_producers..];
    let moves: Vec<Vec<f64>> = scroungers
        .iter()
        .enumerate()
        .map(|(r, &i)| {
            ssa_scrounger_move(
                &agents[i].position,
                n_producers + r + 1,
                n,
                &producer_best,
                &worst,
                &mut rngs[i],
            )
        })
        .collect();
    greedy(ctx, agents, scroungers, moves);

    let mut pop_rng = ctx.rng(StreamKind::Population, t, 0);
    let mut sentinels = sample(&mut pop_rng, n, params.sentinels(n)).into_vec();
    sentinels.sort_unstable();
    let best = ctx.best().clone();
    let worst_now = rank_order(agents)[n - 1];
    let worst_agent = agents[worst_now].clone();
    let moves: Vec<Vec<f64>> = sentinels
        .iter()
        .map(|&i| ssa_sentinel_move(&agents[i], &best, &worst_agent, &mut rngs[i]))
        .collect();
    greedy(ctx, agents, &sentinels, moves);
    Ok(())
}

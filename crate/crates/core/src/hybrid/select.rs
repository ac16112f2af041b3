//! Hybrid HHO+BA wrapper feature selection.
//!
//! Agents live in the continuous box `[−bound, bound]^N` and are read as
//! feature masks through the stochastic `|tanh|` transfer. Each generation,
//! per agent:
//!
//! 1. the HHO besiege rule moves the agent toward the prey (the best
//!    position found so far), giving candidate H;
//! 2. the BA velocity rule, seeded with H and pulled by the same best,
//!    refines H into candidate B (or a loudness-scaled walk around the best
//!    when the pulse draw fires);
//! 3. both are binarized and scored, and the agent keeps the best of
//!    incumbent, H and B (ties favour that order).
//!
//! Mask fitness is cached for the run; the cache only avoids recomputation
//! and never changes results.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{binarize, FeatureMask, SelectionFitness};
use crate::error::{Error, Result};
use crate::metaheuristics::{ba_update, hho_update, local_walk, BaParams, BatState, HhoParams};
use crate::search::{
    seeded_rng, stream_id, BoundedSpace, ConvergenceTrace, Executor, RunConfig, StreamKind,
    TraceRecord,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HybridParams {
    pub hho: HhoParams,
    pub ba: BaParams,
    /// Half-width of the continuous search box per dimension.
    pub bound: f64,
}

impl Default for HybridParams {
    fn default() -> Self {
        Self {
            hho: HhoParams::default(),
            ba: BaParams::default(),
            bound: 4.0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelectionOutcome {
    pub mask: FeatureMask,
    pub fitness: f64,
    /// Continuous position the mask was drawn from.
    pub position: Vec<f64>,
    pub trace: ConvergenceTrace,
    /// Number of distinct masks scored.
    pub distinct_masks: usize,
}

struct Hawk {
    position: Vec<f64>,
    velocity: Vec<f64>,
    mask: FeatureMask,
    fitness: f64,
}

struct Scorer<'a, 'b> {
    fitness: &'b SelectionFitness<'a>,
    exec: Executor,
    cache: HashMap<FeatureMask, f64>,
    evals: u64,
}

impl Scorer<'_, '_> {
    fn score(&mut self, masks: &[FeatureMask]) -> Result<Vec<f64>> {
        let mut missing: Vec<FeatureMask> = masks
            .iter()
            .filter(|m| !self.cache.contains_key(*m))
            .cloned()
            .collect();
        missing.sort();
        missing.dedup();
        let fitness = self.fitness;
        let values = self.exec.map(&missing, |m| fitness.evaluate(m));
        for (m, v) in missing.into_iter().zip(values) {
            self.cache.insert(m, v?);
        }
        self.evals += masks.len() as u64;
        Ok(masks.iter().map(|m| self.cache[m]).collect())
    }
}

fn better(f: f64, than: f64) -> bool {
    f < than
}

/// Runs the hybrid selector. The fold plan inside `fitness` stays fixed for
/// the whole search. Evaluations: `n` for initialization plus `2n` per
/// generation (mask lookups, cached or not).
pub fn hybrid_hho_ba_select(
    fitness: &SelectionFitness<'_>,
    config: &RunConfig,
    params: &HybridParams,
) -> Result<SelectionOutcome> {
    config.validate()?;
    params.hho.validate()?;
    params.ba.validate()?;
    if !(params.bound > 0.0 && params.bound.is_finite()) {
        return Err(Error::config("bound must be positive and finite"));
    }
    fitness.data.require_classification()?;
    let n_features = fitness.n_features();
    let mut scorer = Scorer {
        fitness,
        exec: Executor::new(config.threads)?,
        cache: HashMap::new(),
        evals: 0,
    };
    let space = BoundedSpace::uniform(n_features, -params.bound, params.bound)?;
    let rng = |kind, t: usize, i: usize| seeded_rng(config.seed, stream_id(kind, t as u64, i as u64));

    if n_features == 1 {
        let mask = FeatureMask::full(1);
        let f = scorer.score(std::slice::from_ref(&mask))?[0];
        let mut trace = ConvergenceTrace::with_capacity(config.max_iters);
        for t in 0..config.max_iters {
            trace.push(TraceRecord {
                iteration: t + 1,
                best_fitness: f,
                mean_fitness: f,
                evals: scorer.evals,
                nonfinite: 0,
            });
        }
        return Ok(SelectionOutcome {
            mask,
            fitness: f,
            position: vec![params.bound],
            trace,
            distinct_masks: 1,
        });
    }

    let n = config.pop_size;
    let mut positions = Vec::with_capacity(n);
    let mut masks = Vec::with_capacity(n);
    for i in 0..n {
        let mut r = rng(StreamKind::Init, 0, i);
        let x: Vec<f64> = (0..n_features)
            .map(|_| -params.bound + 2.0 * params.bound * r.random::<f64>())
            .collect();
        masks.push(binarize(&x, &mut r)?);
        positions.push(x);
    }
    let scores = scorer.score(&masks)?;
    let mut hawks: Vec<Hawk> = positions
        .into_iter()
        .zip(masks)
        .zip(scores)
        .map(|((position, mask), fitness)| Hawk {
            velocity: vec![0.0; n_features],
            position,
            mask,
            fitness,
        })
        .collect();
    let mut elite = 0;
    for (i, h) in hawks.iter().enumerate() {
        if better(h.fitness, hawks[elite].fitness) {
            elite = i;
        }
    }
    let mut best_position = hawks[elite].position.clone();
    let mut best_mask = hawks[elite].mask.clone();
    let mut best_fitness = hawks[elite].fitness;

    let mut bats = BatState::new(&params.ba, n);
    let mut trace = ConvergenceTrace::with_capacity(config.max_iters);
    for t in 0..config.max_iters {
        let scale = bats.mean_loudness();
        let mut cand_pos = Vec::with_capacity(2 * n);
        let mut cand_mask = Vec::with_capacity(2 * n);
        let mut velocities = Vec::with_capacity(n);
        for (i, hawk) in hawks.iter().enumerate() {
            let mut r = rng(StreamKind::Agent, t, i);
            let (energy, jump) = params.hho.draw(&mut r, t, config.max_iters);
            let h = hho_update(&hawk.position, &best_position, energy, jump, &space)?;
            let f = params.ba.frequency(&mut r);
            let (v, mut b) = ba_update(&h, &hawk.velocity, &best_position, f, &space)?;
            if r.random::<f64>() >= bats.pulse[i] {
                b = local_walk(&best_position, scale, &mut r, &space);
            }
            cand_mask.push(binarize(&h, &mut r)?);
            cand_mask.push(binarize(&b, &mut r)?);
            cand_pos.push(h);
            cand_pos.push(b);
            velocities.push(v);
        }
        let scores = scorer.score(&cand_mask)?;
        let mut cand_pos = cand_pos.into_iter();
        let mut cand_mask = cand_mask.into_iter();
        for (i, (hawk, v)) in hawks.iter_mut().zip(velocities).enumerate() {
            hawk.velocity = v;
            for (slot, is_ba) in [(2 * i, false), (2 * i + 1, true)] {
                let x = cand_pos.next().expect("two candidates per agent");
                let m = cand_mask.next().expect("two candidates per agent");
                let f = scores[slot];
                if better(f, best_fitness) {
                    best_fitness = f;
                    best_position = x.clone();
                    best_mask = m.clone();
                }
                if better(f, hawk.fitness) {
                    if is_ba {
                        bats.accept(&params.ba, i, t);
                    }
                    hawk.position = x;
                    hawk.mask = m;
                    hawk.fitness = f;
                }
            }
        }
        let mean = hawks.iter().map(|h| h.fitness).sum::<f64>() / n as f64;
        trace.push(TraceRecord {
            iteration: t + 1,
            best_fitness,
            mean_fitness: mean,
            evals: scorer.evals,
            nonfinite: 0,
        });
    }

    Ok(SelectionOutcome {
        mask: best_mask,
        fitness: best_fitness,
        position: best_position,
        trace,
        distinct_masks: scorer.cache.len(),
    })
}

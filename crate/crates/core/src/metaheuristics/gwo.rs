//! Grey wolf optimizer.
//!
//! Each wolf moves to the mean of three encircling points, one per leader
//! `L ∈ {alpha, beta, delta}`: `X_L = L − A·|C·L − X|` with `A = 2a·r1 − a`,
//! `C = 2·r2` drawn per leader and per dimension. `a` decays linearly from
//! `a_initial` to 0 over the run. Leaders are the three best positions seen
//! so far.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ssa::rank_order;
use super::SearchContext;
use crate::error::{Error, Result};
use crate::search::{Agent, BoundedSpace, Objective, RandomStream};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GwoParams {
    pub a_initial: f64,
}

impl Default for GwoParams {
    fn default() -> Self {
        Self { a_initial: 2.0 }
    }
}

impl GwoParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.a_initial > 0.0) {
            return Err(Error::config("a_initial must be positive"));
        }
        Ok(())
    }

    pub fn a_at(&self, t: usize, max_iters: usize) -> f64 {
        self.a_initial * (1.0 - t as f64 / max_iters as f64)
    }
}

/// Alpha, beta and delta: the three best agents seen so far.
#[derive(Debug, Clone, PartialEq)]
pub struct Leaders(pub [Agent; 3]);

impl Leaders {
    /// Top three of `agents` by fitness, ties by index.
    pub fn from_population(agents: &[Agent]) -> Result<Self> {
        if agents.len() < 3 {
            return Err(Error::config(format!(
                "population of {} is too small for alpha/beta/delta (need at least 3)",
                agents.len()
            )));
        }
        let order = rank_order(agents);
        Ok(Leaders([
            agents[order[0]].clone(),
            agents[order[1]].clone(),
            agents[order[2]].clone(),
        ]))
    }

    /// Merges freshly scored agents; current leaders win ties.
    pub fn update(&mut self, agents: &[Agent]) {
        let mut pool: Vec<Agent> = self.0.to_vec();
        pool.extend_from_slice(agents);
        let order = rank_order(&pool);
        self.0 = [
            pool[order[0]].clone(),
            pool[order[1]].clone(),
            pool[order[2]].clone(),
        ];
    }

    pub fn positions(&self) -> [&[f64]; 3] {
        [
            &self.0[0].position,
            &self.0[1].position,
            &self.0[2].position,
        ]
    }
}

/// Encircling move of one wolf, clamped to `space`.
pub fn gwo_move(
    position: &[f64],
    leaders: [&[f64]; 3],
    a: f64,
    rng: &mut RandomStream,
    space: &BoundedSpace,
) -> Result<Vec<f64>> {
    super::hho::check_len(space, position)?;
    for l in leaders {
        super::hho::check_len(space, l)?;
    }
    let mut next: Vec<f64> = (0..position.len())
        .map(|d| {
            let [x1, x2, x3] = leaders.map(|l| {
                let big_a = 2.0 * a * rng.random::<f64>() - a;
                let c = 2.0 * rng.random::<f64>();
                l[d] - big_a * (c * l[d] - position[d]).abs()
            });
            // mean written as an offset from x1 so equal points average exactly
            x1 + ((x2 - x1) + (x3 - x1)) / 3.0
        })
        .collect();
    space.clamp_in_place(&mut next);
    Ok(next)
}

/// Moves the pack toward the frozen leaders without scoring.
pub fn gwo_positions(
    agents: &[Agent],
    leaders: &Leaders,
    a: f64,
    rngs: &mut [RandomStream],
    space: &BoundedSpace,
) -> Result<Vec<Vec<f64>>> {
    agents
        .iter()
        .zip(rngs.iter_mut())
        .map(|(agent, rng)| gwo_move(&agent.position, leaders.positions(), a, rng, space))
        .collect()
}

/// One GWO generation: move, score, replace, refresh leaders.
pub fn gwo_step<O: Objective + ?Sized>(
    ctx: &mut SearchContext<'_, O>,
    agents: &mut [Agent],
    leaders: &mut Leaders,
    params: &GwoParams,
    t: usize,
) -> Result<()> {
    let a = params.a_at(t, ctx.config().max_iters);
    let mut rngs = ctx.agent_rngs(t, agents.len());
    let moves = gwo_positions(agents, leaders, a, &mut rngs, ctx.space())?;
    let fitness = ctx.score(&moves);
    for ((agent, x), f) in agents.iter_mut().zip(moves).zip(fitness) {
        agent.position = x;
        agent.fitness = f;
    }
    leaders.update(agents);
    Ok(())
}

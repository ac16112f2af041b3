//! Harris hawks, reduced to the single besiege rule
//! `X(t+1) = X_prey − E·|J·X_prey − X(t)|`.
//!
//! The escape energy is `E = 2·E0·(1 − t/T)` with `E0 ~ U(e0_range)` drawn per
//! agent per generation, and the jump strength is `J = 2·(1 − u)`,
//! `u ~ U[0, 1)`. The multi-phase soft/hard besiege branching of the full
//! algorithm is not used.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::SearchContext;
use crate::error::{Error, Result};
use crate::search::{Agent, BoundedSpace, Objective, RandomStream};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HhoParams {
    /// Interval for the initial escape energy E0.
    pub e0_range: (f64, f64),
}

impl Default for HhoParams {
    fn default() -> Self {
        Self {
            e0_range: (-1.0, 1.0),
        }
    }
}

impl HhoParams {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.e0_range;
        if !(-1.0..=1.0).contains(&lo) || !(-1.0..=1.0).contains(&hi) || lo > hi {
            return Err(Error::config(format!(
                "e0_range ({lo}, {hi}) must be an interval inside [-1, 1]"
            )));
        }
        Ok(())
    }

    /// Draws `(E, J)` for generation `t` of `max_iters`.
    pub fn draw(&self, rng: &mut RandomStream, t: usize, max_iters: usize) -> (f64, f64) {
        let (lo, hi) = self.e0_range;
        let e0 = lo + (hi - lo) * rng.random::<f64>();
        let energy = 2.0 * e0 * (1.0 - t as f64 / max_iters as f64);
        let jump = 2.0 * (1.0 - rng.random::<f64>());
        (energy, jump)
    }
}

/// Besiege move of one hawk toward the prey, clamped to `space`.
pub fn hho_update(
    position: &[f64],
    prey: &[f64],
    energy: f64,
    jump: f64,
    space: &BoundedSpace,
) -> Result<Vec<f64>> {
    check_len(space, position)?;
    check_len(space, prey)?;
    let mut next: Vec<f64> = prey
        .iter()
        .zip(position)
        .map(|(p, x)| p - energy * (jump * p - x).abs())
        .collect();
    space.clamp_in_place(&mut next);
    Ok(next)
}

/// Moves every hawk once and re-scores. Positions are replaced
/// unconditionally; the context keeps the best-so-far.
pub fn hho_step<O: Objective + ?Sized>(
    ctx: &mut SearchContext<'_, O>,
    agents: &mut [Agent],
    params: &HhoParams,
    t: usize,
) -> Result<()> {
    let prey = ctx.best().position.clone();
    let max_iters = ctx.config().max_iters;
    let mut moves = Vec::with_capacity(agents.len());
    for (i, agent) in agents.iter().enumerate() {
        let mut rng = ctx.rng(crate::search::StreamKind::Agent, t, i);
        let (energy, jump) = params.draw(&mut rng, t, max_iters);
        moves.push(hho_update(&agent.position, &prey, energy, jump, ctx.space())?);
    }
    let fitness = ctx.score(&moves);
    for ((agent, x), f) in agents.iter_mut().zip(moves).zip(fitness) {
        agent.position = x;
        agent.fitness = f;
    }
    Ok(())
}

pub(crate) fn check_len(space: &BoundedSpace, x: &[f64]) -> Result<()> {
    if x.len() != space.dims() {
        return Err(Error::Dimension {
            expected: space.dims(),
            actual: x.len(),
        });
    }
    Ok(())
}

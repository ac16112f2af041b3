//! Staged SSA→GWO tuning: SSA explores the full box, then GWO refines inside
//! a box shrunk around SSA's best, starting from that best.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metaheuristics::{run_optimizer, run_optimizer_seeded, Algorithm, GwoParams, Outcome, SsaParams};
use crate::search::{Agent, BoundedSpace, Objective, RunConfig};

/// Smallest stage-two box width per dimension (unless the original box is
/// itself narrower).
pub const MIN_STAGE_WIDTH: f64 = 1e-9;

/// Offset applied to the seed for the GWO stage so its streams differ from
/// the SSA stage's.
const STAGE_TWO_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TunerStagePlan {
    pub ssa_budget: usize,
    pub gwo_budget: usize,
    pub shrink_factor: f64,
}

impl Default for TunerStagePlan {
    fn default() -> Self {
        Self {
            ssa_budget: 2000,
            gwo_budget: 2000,
            shrink_factor: 0.2,
        }
    }
}

impl TunerStagePlan {
    pub fn validate(&self, pop_size: usize) -> Result<()> {
        if self.ssa_budget < pop_size || self.gwo_budget < pop_size {
            return Err(Error::config(format!(
                "stage budgets ({}, {}) must be at least the population size {pop_size}",
                self.ssa_budget, self.gwo_budget
            )));
        }
        if !(self.shrink_factor > 0.0 && self.shrink_factor < 1.0) {
            return Err(Error::config("shrink_factor must lie in (0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct StagedOutcome {
    pub stage1: Outcome,
    pub stage2: Outcome,
    pub stage2_space: BoundedSpace,
    pub best: Agent,
}

/// Box centred at `center` with half-width `factor·width` per dimension,
/// at least [`MIN_STAGE_WIDTH`] wide, clipped to `space`.
pub fn shrink_box(space: &BoundedSpace, center: &[f64], factor: f64) -> Result<BoundedSpace> {
    let mut lower = Vec::with_capacity(space.dims());
    let mut upper = Vec::with_capacity(space.dims());
    for d in 0..space.dims() {
        let half = (factor * space.width(d)).max(MIN_STAGE_WIDTH / 2.0);
        let c = center[d].clamp(space.lower()[d], space.upper()[d]);
        lower.push((c - half).max(space.lower()[d]));
        upper.push((c + half).min(space.upper()[d]));
    }
    BoundedSpace::new(lower, upper)
}

/// Runs both stages. Generation counts are the largest that fit each budget
/// (at least one generation). The returned best is never worse than the
/// SSA stage's best.
pub fn staged_ssa_gwo_tune<O: Objective + ?Sized>(
    objective: &O,
    space: &BoundedSpace,
    plan: &TunerStagePlan,
    config: &RunConfig,
    ssa: SsaParams,
    gwo: GwoParams,
    warm_start: &[Vec<f64>],
) -> Result<StagedOutcome> {
    plan.validate(config.pop_size)?;
    let ssa_alg = Algorithm::Ssa(ssa);
    let gwo_alg = Algorithm::Gwo(gwo);
    let stage1_cfg = RunConfig {
        max_iters: ssa_alg.iterations_for_budget(config.pop_size, plan.ssa_budget),
        ..config.clone()
    };
    let stage1 = run_optimizer_seeded(&ssa_alg, objective, space, &stage1_cfg, warm_start)?;

    let stage2_space = shrink_box(space, &stage1.best.position, plan.shrink_factor)?;
    let stage2_cfg = RunConfig {
        seed: config.seed.wrapping_add(STAGE_TWO_SEED_OFFSET),
        max_iters: gwo_alg.iterations_for_budget(config.pop_size, plan.gwo_budget),
        ..config.clone()
    };
    let stage2 = run_optimizer_seeded(
        &gwo_alg,
        objective,
        &stage2_space,
        &stage2_cfg,
        std::slice::from_ref(&stage1.best.position),
    )?;
    let best = if stage2.best.fitness < stage1.best.fitness {
        stage2.best.clone()
    } else {
        stage1.best.clone()
    };
    Ok(StagedOutcome {
        stage1,
        stage2,
        stage2_space,
        best,
    })
}

/// Single-stage SSA with the combined budget, for paired comparisons.
pub fn ssa_only<O: Objective + ?Sized>(
    objective: &O,
    space: &BoundedSpace,
    budget: usize,
    config: &RunConfig,
    ssa: SsaParams,
) -> Result<Outcome> {
    let alg = Algorithm::Ssa(ssa);
    let cfg = RunConfig {
        max_iters: alg.iterations_for_budget(config.pop_size, budget),
        ..config.clone()
    };
    run_optimizer(&alg, objective, space, &cfg)
}

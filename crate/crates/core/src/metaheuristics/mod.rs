//! Population optimizers over a [`BoundedSpace`](crate::search::BoundedSpace).
//!
//! All four share [`SearchContext`]: uniform initialization from per-agent
//! `Init` streams, one `Agent` stream per agent per generation, and a global
//! elite that makes the trace's best fitness non-increasing.
//!
//! Objective evaluations per run (initialization included):
//!
//! | algorithm | evaluations                       |
//! |-----------|-----------------------------------|
//! | HHO, BA, GWO | `n·(T + 1)`                    |
//! | SSA       | `n + T·(n + ⌈SD·n⌉)` (sentinels re-scored) |

mod ba;
mod context;
mod gwo;
mod hho;
mod ssa;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use ba::{ba_step, ba_update, local_walk, BaParams, BatState};
pub use context::{Outcome, SearchContext};
pub use gwo::{gwo_move, gwo_positions, gwo_step, GwoParams, Leaders};
pub use hho::{hho_step, hho_update, HhoParams};
pub use ssa::{
    ssa_producer_move, ssa_scrounger_move, ssa_sentinel_move, ssa_step, SsaParams,
};

use crate::error::{Error, Result};
use crate::search::{BoundedSpace, Objective, RunConfig};

/// An optimizer together with its parameter block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Algorithm {
    Hho(HhoParams),
    Ba(BaParams),
    Ssa(SsaParams),
    Gwo(GwoParams),
}

impl Algorithm {
    pub const NAMES: [&'static str; 4] = ["hho", "ba", "ssa", "gwo"];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Hho(_) => "hho",
            Algorithm::Ba(_) => "ba",
            Algorithm::Ssa(_) => "ssa",
            Algorithm::Gwo(_) => "gwo",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Algorithm::Hho(p) => p.validate(),
            Algorithm::Ba(p) => p.validate(),
            Algorithm::Ssa(p) => p.validate(),
            Algorithm::Gwo(p) => p.validate(),
        }
    }

    pub fn min_population(&self) -> usize {
        match self {
            Algorithm::Ssa(_) | Algorithm::Gwo(_) => 3,
            _ => 2,
        }
    }

    /// Objective evaluations one generation costs for a population of `n`.
    pub fn evals_per_generation(&self, n: usize) -> usize {
        match self {
            Algorithm::Ssa(p) => p.evals_per_generation(n),
            _ => n,
        }
    }

    /// Largest generation count whose total cost fits in `budget`, at least 1.
    pub fn iterations_for_budget(&self, n: usize, budget: usize) -> usize {
        (budget.saturating_sub(n) / self.evals_per_generation(n)).max(1)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    /// Parses a name into the algorithm with default parameters.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hho" => Ok(Algorithm::Hho(HhoParams::default())),
            "ba" => Ok(Algorithm::Ba(BaParams::default())),
            "ssa" => Ok(Algorithm::Ssa(SsaParams::default())),
            "gwo" => Ok(Algorithm::Gwo(GwoParams::default())),
            other => Err(Error::config(format!(
                "unknown algorithm '{other}'; valid: {}",
                Self::NAMES.join(", ")
            ))),
        }
    }
}

/// Runs `algorithm` from a uniform random population.
pub fn run_optimizer<O: Objective + ?Sized>(
    algorithm: &Algorithm,
    objective: &O,
    space: &BoundedSpace,
    config: &RunConfig,
) -> Result<Outcome> {
    run_optimizer_seeded(algorithm, objective, space, config, &[])
}

/// Like [`run_optimizer`], with the first `seeds.len()` agents placed at the
/// given (clamped) positions instead of uniform draws.
pub fn run_optimizer_seeded<O: Objective + ?Sized>(
    algorithm: &Algorithm,
    objective: &O,
    space: &BoundedSpace,
    config: &RunConfig,
    seeds: &[Vec<f64>],
) -> Result<Outcome> {
    algorithm.validate()?;
    config.validate()?;
    if config.pop_size < algorithm.min_population() {
        return Err(Error::config(format!(
            "{} needs a population of at least {}, got {}",
            algorithm,
            algorithm.min_population(),
            config.pop_size
        )));
    }
    if seeds.len() > config.pop_size {
        return Err(Error::config("more seed positions than agents"));
    }
    let mut ctx = SearchContext::new(objective, space, config)?;
    let mut agents = ctx.init_population(seeds)?;
    match algorithm {
        Algorithm::Hho(p) => {
            for t in 0..config.max_iters {
                hho_step(&mut ctx, &mut agents, p, t)?;
                ctx.record(t, &agents);
            }
        }
        Algorithm::Ba(p) => {
            let mut state = BatState::new(p, agents.len());
            for t in 0..config.max_iters {
                ba_step(&mut ctx, &mut agents, &mut state, p, t)?;
                ctx.record(t, &agents);
            }
        }
        Algorithm::Ssa(p) => {
            for t in 0..config.max_iters {
                ssa_step(&mut ctx, &mut agents, p, t)?;
                ctx.record(t, &agents);
            }
        }
        Algorithm::Gwo(p) => {
            let mut leaders = Leaders::from_population(&agents)?;
            for t in 0..config.max_iters {
                gwo_step(&mut ctx, &mut agents, &mut leaders, p, t)?;
                ctx.record(t, &agents);
            }
        }
    }
    Ok(ctx.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Benchmark;

    fn all() -> Vec<Algorithm> {
        Algorithm::NAMES.iter().map(|n| n.parse().unwrap()).collect()
    }

    #[test]
    fn constant_objective_returns_constant() {
        let space = BoundedSpace::uniform(3, -1.0, 1.0).unwrap();
        let cfg = RunConfig::new(1, 6, 10);
        for alg in all() {
            let out = run_optimizer(&alg, &|_: &[f64]| 3.25, &space, &cfg).unwrap();
            assert_eq!(out.best.fitness, 3.25, "{alg}");
            assert_eq!(out.trace.len(), 10);
        }
    }

    #[test]
    fn degenerate_bounds_give_exact_point() {
        let space = BoundedSpace::new(vec![0.7, -2.0], vec![0.7, -2.0]).unwrap();
        let cfg = RunConfig::new(3, 5, 20);
        for alg in all() {
            let out = run_optimizer(&alg, &Benchmark::Sphere, &space, &cfg).unwrap();
            assert_eq!(out.best.position, vec![0.7, -2.0], "{alg}");
        }
    }

    #[test]
    fn evaluation_counts() {
        let space = Benchmark::Sphere.default_space(4).unwrap();
        let cfg = RunConfig::new(5, 10, 7);
        for alg in all() {
            let out = run_optimizer(&alg, &Benchmark::Sphere, &space, &cfg).unwrap();
            let expected = 10 + 7 * alg.evals_per_generation(10) as u64;
            assert_eq!(out.trace.last().unwrap().evals, expected, "{alg}");
        }
    }

    #[test]
    fn invalid_configs_rejected() {
        let space = Benchmark::Sphere.default_space(2).unwrap();
        let gwo: Algorithm = "gwo".parse().unwrap();
        assert!(run_optimizer(&gwo, &Benchmark::Sphere, &space, &RunConfig::new(0, 2, 5)).is_err());
        let hho: Algorithm = "hho".parse().unwrap();
        assert!(run_optimizer(&hho, &Benchmark::Sphere, &space, &RunConfig::new(0, 1, 5)).is_err());
        assert!(run_optimizer(&hho, &Benchmark::Sphere, &space, &RunConfig::new(0, 5, 0)).is_err());
        let err = "pso".parse::<Algorithm>().unwrap_err().to_string();
        assert!(err.contains("hho, ba, ssa, gwo"));
    }

    #[test]
    fn nonfinite_is_flagged_not_fatal() {
        let space = BoundedSpace::uniform(2, -1.0, 1.0).unwrap();
        let f = |x: &[f64]| if x[0] > 0.5 { f64::NAN } else { x[0] * x[0] + x[1] * x[1] };
        let cfg = RunConfig::new(11, 12, 15);
        for alg in all() {
            let out = run_optimizer(&alg, &f, &space, &cfg).unwrap();
            assert!(out.best.fitness.is_finite());
            assert!(out.trace.is_monotone());
        }
    }
}

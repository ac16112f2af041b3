use neoplasm_opt::metaheuristics::{run_optimizer, Algorithm};
use neoplasm_opt::search::{Benchmark, RunConfig};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::args::OptimizeArgs;
use crate::config;
use crate::failure::Failure;
use crate::output::Run;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizeConfig {
    pub algorithm: String,
    pub objective: String,
    pub dims: usize,
    pub pop_size: usize,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self {
            algorithm: "hho".into(),
            objective: "sphere".into(),
            dims: 10,
            pop_size: 30,
            max_iters: 500,
            seed: 42,
        }
    }
}

pub fn run(args: OptimizeArgs, threads: usize) -> Result<(), Failure> {
    let mut cfg: OptimizeConfig = config::load(args.config.as_deref(), "optimize")?;
    config::set(&mut cfg.algorithm, args.alg);
    config::set(&mut cfg.objective, args.objective);
    config::set(&mut cfg.dims, args.dims);
    config::set(&mut cfg.pop_size, args.pop);
    config::set(&mut cfg.max_iters, args.iters);
    config::set(&mut cfg.seed, args.seed);

    let alg: Algorithm = cfg.algorithm.parse()?;
    let bench: Benchmark = cfg.objective.parse()?;
    if cfg.dims == 0 {
        return Err(Failure::usage("dims must be at least 1"));
    }
    let space = bench.default_space(cfg.dims)?;
    let run_cfg = RunConfig::new(cfg.seed, cfg.pop_size, cfg.max_iters).with_threads(threads);

    let mut run = Run::start("optimize");
    let outcome = run_optimizer(&alg, &bench, &space, &run_cfg)?;
    run.write(&args.output, outcome.trace.to_csv().as_bytes())?;
    run.finish(&args.output, &cfg, Some(cfg.seed), threads)?;

    let evals = outcome.trace.last().map_or(0, |r| r.evals);
    println!(
        "{} on {} ({}-D): best {:e} after {} evaluations",
        alg.name(),
        bench.name(),
        cfg.dims,
        outcome.best.fitness,
        evals
    );
    println!(
        "{}",
        json!({
            "best_fitness": outcome.best.fitness,
            "best_position": outcome.best.position,
            "evals": evals,
        })
    );
    Ok(())
}

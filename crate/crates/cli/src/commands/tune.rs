use std::path::{Path, PathBuf};

use neoplasm_opt::hybrid::{staged_ssa_gwo_tune, StagedOutcome, TunerStagePlan};
use neoplasm_opt::metaheuristics::{GwoParams, Outcome, SsaParams};
use neoplasm_opt::search::{Benchmark, BoundedSpace, RunConfig};
use neoplasm_opt::surrogate::{FoldPlan, KnnParams, KnnTuningObjective};
use serde::{Deserialize, Serialize};

use super::load_dataset;
use crate::args::TuneArgs;
use crate::config;
use crate::failure::Failure;
use crate::output::{file_name, sibling, to_json, Run};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TuneConfig {
    pub objective: Option<String>,
    pub surrogate: Option<PathBuf>,
    pub dims: usize,
    pub pop_size: usize,
    pub seed: u64,
    pub folds: usize,
    pub plan: TunerStagePlan,
    pub ssa: SsaParams,
    pub gwo: GwoParams,
}

impl Default for TuneConfig {
    fn default() -> Self {
        Self {
            objective: None,
            surrogate: None,
            dims: 5,
            pop_size: 20,
            seed: 42,
            folds: 5,
            plan: TunerStagePlan::default(),
            ssa: SsaParams::default(),
            gwo: GwoParams::default(),
        }
    }
}

#[derive(Debug, Serialize)]
struct StageReport {
    best_fitness: f64,
    best_position: Vec<f64>,
    generations: usize,
    evals: u64,
    trace: String,
}

#[derive(Debug, Serialize)]
struct BoxReport {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct SurrogateReport {
    k: usize,
    p: f64,
    tuned_accuracy: f64,
    default_k: usize,
    default_p: f64,
    default_accuracy: f64,
}

#[derive(Debug, Serialize)]
struct FinalReport {
    best_fitness: f64,
    best_position: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct TuneResult {
    mode: &'static str,
    objective: String,
    stage1: StageReport,
    stage2: StageReport,
    stage2_box: BoxReport,
    #[serde(rename = "final")]
    final_best: FinalReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    surrogate: Option<SurrogateReport>,
}

fn stage_report(o: &Outcome, trace: &Path) -> StageReport {
    StageReport {
        best_fitness: o.best.fitness,
        best_position: o.best.position.clone(),
        generations: o.trace.len(),
        evals: o.trace.last().map_or(0, |r| r.evals),
        trace: file_name(trace),
    }
}

pub fn run(args: TuneArgs, threads: usize) -> Result<(), Failure> {
    let mut cfg: TuneConfig = config::load(args.config.as_deref(), "tune")?;
    if args.objective.is_some() {
        cfg.surrogate = None;
    }
    if args.surrogate.is_some() {
        cfg.objective = None;
    }
    config::set(&mut cfg.objective, args.objective.map(Some));
    config::set(&mut cfg.surrogate, args.surrogate.map(Some));
    config::set(&mut cfg.dims, args.dims);
    config::set(&mut cfg.pop_size, args.pop);
    config::set(&mut cfg.plan.ssa_budget, args.ssa_budget);
    config::set(&mut cfg.plan.gwo_budget, args.gwo_budget);
    config::set(&mut cfg.seed, args.seed);
    config::set(&mut cfg.folds, args.folds);
    cfg.plan.validate(cfg.pop_size)?;
    let run_cfg = RunConfig::new(cfg.seed, cfg.pop_size, 1).with_threads(threads);

    let mut run = Run::start("tune");
    let (name, outcome, surrogate) = match (&cfg.objective, &cfg.surrogate) {
        (Some(_), Some(_)) => {
            return Err(Failure::usage("give either --objective or --surrogate, not both"))
        }
        (None, None) => return Err(Failure::usage("one of --objective or --surrogate is required")),
        (Some(obj), None) => {
            let bench: Benchmark = obj.parse()?;
            if cfg.dims == 0 {
                return Err(Failure::usage("dims must be at least 1"));
            }
            let space = bench.default_space(cfg.dims)?;
            let out = staged_ssa_gwo_tune(&bench, &space, &cfg.plan, &run_cfg, cfg.ssa, cfg.gwo, &[])?;
            (bench.name().to_string(), out, None)
        }
        (None, Some(path)) => {
            let data = load_dataset(path, &mut run.inputs)?;
            data.require_classification()?;
            let plan = FoldPlan::stratified(data.labels(), cfg.folds, cfg.seed)?;
            let objective = KnnTuningObjective::new(&data, &plan);
            let space: BoundedSpace = KnnTuningObjective::space();
            let default = KnnParams::default();
            let warm = vec![vec![default.k as f64, default.p]];
            let out = staged_ssa_gwo_tune(&objective, &space, &cfg.plan, &run_cfg, cfg.ssa, cfg.gwo, &warm)?;
            let tuned = KnnTuningObjective::params_at(&out.best.position);
            let report = SurrogateReport {
                k: tuned.k,
                p: tuned.p,
                tuned_accuracy: objective.accuracy(&tuned)?,
                default_k: default.k,
                default_p: default.p,
                default_accuracy: objective.accuracy(&default)?,
            };
            ("knn-cv-error".to_string(), out, Some(report))
        }
    };
    let StagedOutcome {
        stage1,
        stage2,
        stage2_space,
        best,
    } = outcome;

    let t1 = sibling(&args.output, ".stage1.trace.csv");
    let t2 = sibling(&args.output, ".stage2.trace.csv");
    let result = TuneResult {
        mode: if surrogate.is_some() { "surrogate" } else { "objective" },
        objective: name,
        stage1: stage_report(&stage1, &t1),
        stage2: stage_report(&stage2, &t2),
        stage2_box: BoxReport {
            lower: stage2_space.lower().to_vec(),
            upper: stage2_space.upper().to_vec(),
        },
        final_best: FinalReport {
            best_fitness: best.fitness,
            best_position: best.position,
        },
        surrogate,
    };
    run.write(&t1, stage1.trace.to_csv().as_bytes())?;
    run.write(&t2, stage2.trace.to_csv().as_bytes())?;
    run.write(&args.output, &to_json(&result)?)?;
    run.finish(&args.output, &cfg, Some(cfg.seed), threads)?;
    println!(
        "stage 1 (ssa) {:e}, stage 2 (gwo) {:e}, final {:e}",
        result.stage1.best_fitness, result.stage2.best_fitness, result.final_best.best_fitness
    );
    if let Some(s) = &result.surrogate {
        println!(
            "k={} p={:.3}: CV accuracy {:.4} (default k={} p={}: {:.4})",
            s.k, s.p, s.tuned_accuracy, s.default_k, s.default_p, s.default_accuracy
        );
    }
    Ok(())
}

use std::path::PathBuf;

use neoplasm_opt::hybrid::{hybrid_hho_ba_select, HybridParams, SelectionFitness, SelectionFitnessParams};
use neoplasm_opt::search::RunConfig;
use neoplasm_opt::surrogate::{cv_predict, macro_metrics, FoldPlan, KnnParams, Metrics};
use serde::{Deserialize, Serialize};

use super::load_dataset;
use crate::args::SelectArgs;
use crate::config;
use crate::failure::Failure;
use crate::output::{file_name, sibling, to_json, Run};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SelectConfig {
    pub data: Option<PathBuf>,
    pub pop_size: usize,
    pub max_iters: usize,
    pub seed: u64,
    pub alpha: f64,
    pub folds: usize,
    pub k: usize,
    pub hybrid: HybridParams,
}

impl Default for SelectConfig {
    fn default() -> Self {
        Self {
            data: None,
            pop_size: 30,
            max_iters: 400,
            seed: 42,
            alpha: SelectionFitnessParams::default().alpha,
            folds: 5,
            k: KnnParams::default().k,
            hybrid: HybridParams::default(),
        }
    }
}

#[derive(Debug, Serialize)]
struct SelectResult {
    mask: Vec<u8>,
    selected_indices: Vec<usize>,
    selected_features: Vec<String>,
    fitness: f64,
    cv_accuracy: f64,
    metrics: Metrics,
    evals: u64,
    distinct_masks: usize,
    trace: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    ground_truth: Option<TruthReport>,
}

#[derive(Debug, Serialize)]
struct TruthReport {
    recall: Option<f64>,
    precision: Option<f64>,
}

pub fn run(args: SelectArgs, threads: usize) -> Result<(), Failure> {
    let mut cfg: SelectConfig = config::load(args.config.as_deref(), "select")?;
    config::set(&mut cfg.data, args.data.map(Some));
    config::set(&mut cfg.pop_size, args.pop);
    config::set(&mut cfg.max_iters, args.iters);
    config::set(&mut cfg.seed, args.seed);
    config::set(&mut cfg.alpha, args.alpha);
    config::set(&mut cfg.folds, args.folds);
    config::set(&mut cfg.k, args.k);
    let data_path = cfg.data.clone().ok_or_else(|| Failure::usage("no --data CSV given"))?;

    let mut run = Run::start("select");
    let data = load_dataset(&data_path, &mut run.inputs)?;
    data.require_classification()?;
    let plan = FoldPlan::stratified(data.labels(), cfg.folds, cfg.seed)?;
    let knn = KnnParams::euclidean(cfg.k);
    let fitness = SelectionFitness::new(&data, &plan, SelectionFitnessParams { alpha: cfg.alpha }, knn)?;
    let run_cfg = RunConfig::new(cfg.seed, cfg.pop_size, cfg.max_iters).with_threads(threads);

    let outcome = hybrid_hho_ba_select(&fitness, &run_cfg, &cfg.hybrid)?;
    let cv_accuracy = fitness.accuracy(&outcome.mask)?;
    let predicted = cv_predict(&data, &outcome.mask, &plan, &knn)?;
    let metrics = macro_metrics(data.labels(), &predicted, &data.classes());
    let selected = outcome.mask.selected();
    let trace_path = sibling(&args.output, ".trace.csv");
    let result = SelectResult {
        mask: outcome.mask.bits().iter().map(|b| *b as u8).collect(),
        selected_features: selected.iter().map(|&i| data.feature_names()[i].clone()).collect(),
        selected_indices: selected,
        fitness: outcome.fitness,
        cv_accuracy,
        metrics,
        evals: outcome.trace.last().map_or(0, |r| r.evals),
        distinct_masks: outcome.distinct_masks,
        trace: file_name(&trace_path),
        ground_truth: data.ground_truth().map(|t| {
            let (recall, precision) = outcome.mask.recall_precision(t);
            TruthReport { recall, precision }
        }),
    };

    run.write(&trace_path, outcome.trace.to_csv().as_bytes())?;
    run.write(&args.output, &to_json(&result)?)?;
    run.finish(&args.output, &cfg, Some(cfg.seed), threads)?;
    println!(
        "selected {}/{} features ({}), fitness {:.6}, CV accuracy {:.4}",
        outcome.mask.count(),
        outcome.mask.len(),
        result.selected_features.join(","),
        result.fitness,
        cv_accuracy
    );
    Ok(())
}

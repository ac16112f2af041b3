//! Compares the hybrid selector against the exhaustive oracle over a seed sweep.
//!
//! cargo run --release -p neoplasm-opt-core --example oracle_check -- [samples] [sep] [pop] [iters]

use neoplasm_opt::hybrid::{hybrid_hho_ba_select, HybridParams, SelectionFitness};
use neoplasm_opt::search::RunConfig;
use neoplasm_opt::surrogate::{brute_force_best_mask, generate_synthetic, FoldPlan, KnnParams, SyntheticSpec};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let samples: usize = args.first().map(|s| s.parse().unwrap()).unwrap_or(200);
    let sep: f64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(1.0);
    let pop: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(20);
    let iters: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(30);

    let (mut hits, mut recall_sum, mut worst_rel) = (0, 0.0, 0.0f64);
    for seed in 0..20u64 {
        let spec = SyntheticSpec { n_samples: samples, class_sep: sep, seed, ..SyntheticSpec::default() };
        let data = generate_synthetic(&spec).unwrap();
        let plan = FoldPlan::stratified(data.labels(), 5, seed).unwrap();
        let fit = SelectionFitness::new(&data, &plan, Default::default(), KnnParams::default()).unwrap();
        let (omask, ofit) = brute_force_best_mask(&fit, 15).unwrap();
        let out = hybrid_hho_ba_select(&fit, &RunConfig::new(seed, pop, iters), &HybridParams::default()).unwrap();
        let rel = (out.fitness - ofit) / ofit;
        let (recall, _) = out.mask.recall_precision(data.ground_truth().unwrap());
        hits += (out.fitness == ofit) as usize;
        worst_rel = worst_rel.max(rel);
        recall_sum += recall.unwrap();
        println!(
            "seed {seed:2} oracle {} {:.5} hybrid {} {:.5} rel {:.4} distinct {}",
            omask.to_string_bits(), ofit, out.mask.to_string_bits(), out.fitness, rel, out.distinct_masks
        );
    }
    println!("matches {hits}/20, worst rel {worst_rel:.4}, mean recall {:.3}", recall_sum / 20.0);
}

use neoplasm_opt::hybrid::{
    hybrid_hho_ba_select, FeatureMask, HybridParams, SelectionFitness, SelectionFitnessParams,
};
use neoplasm_opt::search::{seeded_rng, stream_id, RunConfig, StreamKind};
use neoplasm_opt::surrogate::{
    brute_force_best_mask, cv_accuracy, generate_synthetic, Dataset, FoldPlan, KnnParams, SyntheticSpec,
};
use rand::Rng;

/// Feature 0 is the label scaled far apart; the rest are uniform noise.
fn one_perfect_feature(n_features: usize, rows: usize) -> Dataset {
    let mut rng = seeded_rng(11, stream_id(StreamKind::Aux, 0, 9));
    let labels: Vec<u32> = (0..rows).map(|i| (i % 2) as u32).collect();
    let data = labels
        .iter()
        .map(|&l| {
            let mut row = vec![l as f64 * 10.0 + rng.random_range(-0.5..0.5)];
            row.extend((1..n_features).map(|_| rng.random_range(0.0..1.0)));
            row
        })
        .collect();
    let names = (0..n_features).map(|i| format!("f{i}")).collect();
    Dataset::new(data, labels, names).unwrap()
}

fn fitness<'a>(data: &'a Dataset, plan: &'a FoldPlan) -> SelectionFitness<'a> {
    SelectionFitness::new(data, plan, SelectionFitnessParams::default(), KnnParams::default()).unwrap()
}

#[test]
fn oracle_prefers_singleton_label_feature() {
    let data = one_perfect_feature(2, 60);
    let plan = FoldPlan::stratified(data.labels(), 5, 1).unwrap();
    let (mask, f) = brute_force_best_mask(&fitness(&data, &plan), 15).unwrap();
    assert_eq!(mask.bits(), &[true, false]);
    assert!((f - 0.01 * 0.5).abs() < 1e-12);
}

#[test]
fn hybrid_matches_oracle_on_separating_feature() {
    let data = one_perfect_feature(8, 80);
    let plan = FoldPlan::stratified(data.labels(), 5, 2).unwrap();
    let fit = fitness(&data, &plan);
    let (oracle_mask, optimum) = brute_force_best_mask(&fit, 15).unwrap();
    let out = hybrid_hho_ba_select(&fit, &RunConfig::new(5, 20, 60), &HybridParams::default()).unwrap();
    assert_eq!(out.fitness, optimum);
    assert_eq!(out.mask, oracle_mask);
    assert_eq!(out.mask.selected(), vec![0]);
    assert!(out.trace.is_monotone());
}

#[test]
fn ground_truth_fitness_golden() {
    let data = generate_synthetic(&SyntheticSpec::default()).unwrap();
    let plan = FoldPlan::stratified(data.labels(), 5, 42).unwrap();
    let fit = fitness(&data, &plan);
    let mask = FeatureMask::from_truth(data.ground_truth().unwrap()).unwrap();
    let acc = cv_accuracy(&data, &mask, &plan, &KnnParams::default()).unwrap();
    let f = fit.evaluate(&mask).unwrap();
    assert_eq!(f, 0.99 * (1.0 - acc) + 0.01 * 0.4);
    assert_eq!(f, GOLDEN_FITNESS);
}

const GOLDEN_FITNESS: f64 = 0.19704999999999995;

#[test]
fn hybrid_deterministic_across_threads() {
    let data = generate_synthetic(&SyntheticSpec { n_samples: 80, ..Default::default() }).unwrap();
    let plan = FoldPlan::stratified(data.labels(), 4, 3).unwrap();
    let fit = fitness(&data, &plan);
    let a = hybrid_hho_ba_select(&fit, &RunConfig::new(9, 10, 25), &HybridParams::default()).unwrap();
    let b = hybrid_hho_ba_select(&fit, &RunConfig::new(9, 10, 25).with_threads(3), &HybridParams::default()).unwrap();
    assert_eq!(a.mask, b.mask);
    assert_eq!(a.fitness, b.fitness);
    assert_eq!(a.trace.to_csv(), b.trace.to_csv());
    assert_eq!(a.trace.last().unwrap().evals, 10 + 25 * 20);
}

#[test]
fn single_feature_and_single_class() {
    let data = one_perfect_feature(1, 20);
    let plan = FoldPlan::stratified(data.labels(), 4, 0).unwrap();
    let out = hybrid_hho_ba_select(&fitness(&data, &plan), &RunConfig::new(1, 5, 3), &HybridParams::default()).unwrap();
    assert_eq!(out.mask.bits(), &[true]);

    let one = Dataset::new(vec![vec![0.0, 1.0]; 10], vec![0; 10], vec!["a".into(), "b".into()]).unwrap();
    let plan = FoldPlan::stratified(one.labels(), 2, 0).unwrap();
    let fit = SelectionFitness::new(&one, &plan, SelectionFitnessParams::default(), KnnParams::default()).unwrap();
    assert!(hybrid_hho_ba_select(&fit, &RunConfig::new(1, 5, 3), &HybridParams::default()).is_err());
}

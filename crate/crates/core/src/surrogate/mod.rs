//! Wrapper-fitness machinery: datasets, stratified folds, a k-nearest-neighbor
//! surrogate classifier, confusion metrics, synthetic data with known
//! informative features, and an exhaustive subset oracle.

mod dataset;
mod folds;
mod knn;
mod metrics;
mod oracle;
mod synthetic;

pub use dataset::{truth_sidecar_path, Dataset, TruthSidecar};
pub use folds::FoldPlan;
pub use knn::{cv_accuracy, cv_predict, knn_predict, KnnParams, KnnTuningObjective};
pub use metrics::{macro_metrics, metrics_from_confusion, ConfusionCounts, Metrics};
pub use oracle::{brute_force_best_mask, DEFAULT_ORACLE_LIMIT};
pub use synthetic::{generate_synthetic, SyntheticSpec};

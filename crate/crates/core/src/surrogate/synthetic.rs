use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};
use crate::search::{seeded_rng, stream_id, StreamKind};

/// Two-class Gaussian blobs with a known set of informative columns.
///
/// Columns are laid out as `inf*`, then `red*`, then `noise*`:
///
/// * informative: `N(±class_sep/2, 1)`, sign by class;
/// * redundant: a fixed random combination `Σ w_j·inf_j` (weights `N(0, 1)`)
///   plus `N(0, 0.1²)` noise;
/// * noise: `N(0, 1)`.
///
/// Labels alternate `0, 1, 0, 1, …`, so classes are balanced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SyntheticSpec {
    pub n_samples: usize,
    pub n_informative: usize,
    pub n_redundant: usize,
    pub n_noise: usize,
    pub class_sep: f64,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        Self {
            n_samples: 200,
            n_informative: 4,
            n_redundant: 0,
            n_noise: 6,
            class_sep: 1.0,
            seed: 42,
        }
    }
}

pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<Dataset> {
    let n_features = spec.n_informative + spec.n_redundant + spec.n_noise;
    if n_features == 0 {
        return Err(Error::config("synthetic dataset needs at least one feature"));
    }
    if spec.n_redundant > 0 && spec.n_informative == 0 {
        return Err(Error::config("redundant features need informative ones"));
    }
    if spec.n_samples < 2 {
        return Err(Error::config("synthetic dataset needs at least two samples"));
    }
    if !spec.class_sep.is_finite() {
        return Err(Error::config("class_sep must be finite"));
    }
    let mut rng = seeded_rng(spec.seed, stream_id(StreamKind::Aux, 0, 0));
    let weights: Vec<Vec<f64>> = (0..spec.n_redundant)
        .map(|_| (0..spec.n_informative).map(|_| rng.sample(StandardNormal)).collect())
        .collect();

    let mut rows = Vec::with_capacity(spec.n_samples);
    let mut labels = Vec::with_capacity(spec.n_samples);
    for i in 0..spec.n_samples {
        let label = (i % 2) as u32;
        let centre = if label == 1 { spec.class_sep / 2.0 } else { -spec.class_sep / 2.0 };
        let mut row = Vec::with_capacity(n_features);
        for _ in 0..spec.n_informative {
            row.push(centre + rng.sample::<f64, _>(StandardNormal));
        }
        for w in &weights {
            let base: f64 = w.iter().zip(&row[..spec.n_informative]).map(|(a, b)| a * b).sum();
            row.push(base + 0.1 * rng.sample::<f64, _>(StandardNormal));
        }
        for _ in 0..spec.n_noise {
            row.push(rng.sample(StandardNormal));
        }
        rows.push(row);
        labels.push(label);
    }

    let names = (0..spec.n_informative)
        .map(|i| format!("inf{i}"))
        .chain((0..spec.n_redundant).map(|i| format!("red{i}")))
        .chain((0..spec.n_noise).map(|i| format!("noise{i}")))
        .collect();
    let truth = (0..n_features).map(|j| j < spec.n_informative).collect();
    Dataset::new(rows, labels, names)?.with_ground_truth(truth)
}

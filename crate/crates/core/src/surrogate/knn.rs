use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Dataset, FoldPlan};
use crate::error::{Error, Result};
use crate::hybrid::FeatureMask;
use crate::search::{BoundedSpace, Objective};

/// Neighbor count and Minkowski exponent (2 = Euclidean).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KnnParams {
    pub k: usize,
    #[serde(default = "euclid")]
    pub p: f64,
}

fn euclid() -> f64 {
    2.0
}

impl Default for KnnParams {
    fn default() -> Self {
        Self { k: 5, p: 2.0 }
    }
}

impl KnnParams {
    pub fn euclidean(k: usize) -> Self {
        Self { k, p: 2.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::config("k must be positive"));
        }
        if !(self.p >= 1.0) || !self.p.is_finite() {
            return Err(Error::config(format!("distance exponent must be >= 1, got {}", self.p)));
        }
        Ok(())
    }

    /// `Σ |a_i − b_i|^p`; monotone in the Minkowski distance.
    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        if self.p == 2.0 {
            a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
        } else if self.p == 1.0 {
            a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
        } else {
            a.iter().zip(b).map(|(x, y)| (x - y).abs().powf(self.p)).sum()
        }
    }
}

/// Majority label among the `k` rows closest to `query`. Distance ties go to
/// the lower row index, vote ties to the smallest label.
fn vote(rows: &[Vec<f64>], labels: &[u32], query: &[f64], params: &KnnParams) -> u32 {
    let k = params.k.min(rows.len());
    let mut dist: Vec<(f64, usize)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (params.distance(r, query), i))
        .collect();
    let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    if k < dist.len() {
        dist.select_nth_unstable_by(k - 1, cmp);
        dist.truncate(k);
    }
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for (_, i) in &dist {
        *counts.entry(labels[*i]).or_default() += 1;
    }
    let top = counts.values().copied().max().unwrap_or(0);
    counts
        .into_iter()
        .find(|(_, c)| *c == top)
        .map(|(l, _)| l)
        .unwrap_or(0)
}

fn project(row: &[f64], cols: &[usize]) -> Vec<f64> {
    cols.iter().map(|&c| row[c]).collect()
}

/// Classifies `query` (a full-width feature row) with Euclidean k-NN on the
/// masked columns of `train`. No standardization is applied.
pub fn knn_predict(train: &Dataset, query: &[f64], mask: &FeatureMask, k: usize) -> Result<u32> {
    if mask.len() != train.n_features() || query.len() != train.n_features() {
        return Err(Error::contract("mask and query must match the feature count"));
    }
    if k == 0 || k > train.n_rows() {
        return Err(Error::contract(format!(
            "k = {k} must lie in 1..={}",
            train.n_rows()
        )));
    }
    let cols = mask.selected();
    let rows: Vec<Vec<f64>> = train.rows().iter().map(|r| project(r, &cols)).collect();
    Ok(vote(&rows, train.labels(), &project(query, &cols), &KnnParams::euclidean(k)))
}

/// Column means and standard deviations over `rows` (zero deviation → 1).
fn standardizer(data: &Dataset, rows: &[usize], cols: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let n = rows.len() as f64;
    let mut mean = vec![0.0; cols.len()];
    let mut scale = vec![0.0; cols.len()];
    for (j, &c) in cols.iter().enumerate() {
        let m = rows.iter().map(|&r| data.row(r)[c]).sum::<f64>() / n;
        let var = rows.iter().map(|&r| (data.row(r)[c] - m).powi(2)).sum::<f64>() / n;
        mean[j] = m;
        scale[j] = if var > 0.0 { var.sqrt() } else { 1.0 };
    }
    (mean, scale)
}

/// Out-of-fold predictions for every row. Each fold's training rows are
/// standardized with their own mean/deviation; `k` is capped at the training
/// size.
pub fn cv_predict(
    data: &Dataset,
    mask: &FeatureMask,
    plan: &FoldPlan,
    params: &KnnParams,
) -> Result<Vec<u32>> {
    params.validate()?;
    plan.check_rows(data.n_rows())?;
    if mask.len() != data.n_features() {
        return Err(Error::contract(format!(
            "mask has {} bits, dataset has {} features",
            mask.len(),
            data.n_features()
        )));
    }
    let cols = mask.selected();
    let mut predictions = vec![0; data.n_rows()];
    for f in 0..plan.k() {
        let (train, test) = plan.split(f);
        if train.is_empty() {
            return Err(Error::contract("fold leaves no training rows"));
        }
        let (mean, scale) = standardizer(data, &train, &cols);
        let standardize = |r: usize| -> Vec<f64> {
            cols.iter()
                .enumerate()
                .map(|(j, &c)| (data.row(r)[c] - mean[j]) / scale[j])
                .collect()
        };
        let rows: Vec<Vec<f64>> = train.iter().map(|&r| standardize(r)).collect();
        let labels: Vec<u32> = train.iter().map(|&r| data.labels()[r]).collect();
        for &r in &test {
            predictions[r] = vote(&rows, &labels, &standardize(r), params);
        }
    }
    Ok(predictions)
}

/// Mean over folds of held-out accuracy.
pub fn cv_accuracy(
    data: &Dataset,
    mask: &FeatureMask,
    plan: &FoldPlan,
    params: &KnnParams,
) -> Result<f64> {
    let predictions = cv_predict(data, mask, plan, params)?;
    let mut correct = vec![0usize; plan.k()];
    let mut total = vec![0usize; plan.k()];
    for (r, p) in predictions.iter().enumerate() {
        let f = plan.fold_of(r);
        total[f] += 1;
        correct[f] += (*p == data.labels()[r]) as usize;
    }
    let per_fold: Vec<f64> = correct
        .iter()
        .zip(&total)
        .filter(|(_, t)| **t > 0)
        .map(|(c, t)| *c as f64 / *t as f64)
        .collect();
    Ok(per_fold.iter().sum::<f64>() / per_fold.len() as f64)
}

/// `1 − CV accuracy` of k-NN as a function of `[k, p]`, for tuning the
/// surrogate itself. `k` is rounded to the nearest odd integer in `[1, 15]`.
pub struct KnnTuningObjective<'a> {
    pub data: &'a Dataset,
    pub plan: &'a FoldPlan,
    pub mask: FeatureMask,
}

impl<'a> KnnTuningObjective<'a> {
    pub const K_RANGE: (f64, f64) = (1.0, 15.0);
    pub const P_RANGE: (f64, f64) = (1.0, 3.0);

    pub fn new(data: &'a Dataset, plan: &'a FoldPlan) -> Self {
        Self {
            data,
            plan,
            mask: FeatureMask::full(data.n_features()),
        }
    }

    pub fn space() -> BoundedSpace {
        BoundedSpace::new(
            vec![Self::K_RANGE.0, Self::P_RANGE.0],
            vec![Self::K_RANGE.1, Self::P_RANGE.1],
        )
        .expect("static bounds are valid")
    }

    pub fn params_at(x: &[f64]) -> KnnParams {
        let half = ((x[0] - 1.0) / 2.0).round().clamp(0.0, 7.0);
        KnnParams {
            k: 2 * half as usize + 1,
            p: x[1].clamp(Self::P_RANGE.0, Self::P_RANGE.1),
        }
    }

    pub fn accuracy(&self, params: &KnnParams) -> Result<f64> {
        cv_accuracy(self.data, &self.mask, self.plan, params)
    }
}

impl Objective for KnnTuningObjective<'_> {
    fn evaluate(&self, x: &[f64]) -> f64 {
        match self.accuracy(&Self::params_at(x)) {
            Ok(acc) => 1.0 - acc,
            Err(_) => f64::NAN,
        }
    }
}

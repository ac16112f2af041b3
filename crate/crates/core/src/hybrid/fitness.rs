use serde::{Deserialize, Serialize};

use super::FeatureMask;
use crate::error::{Error, Result};
use crate::surrogate::{cv_accuracy, Dataset, FoldPlan, KnnParams};

/// Weight on classification error; the rest weighs the selected fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SelectionFitnessParams {
    pub alpha: f64,
}

impl Default for SelectionFitnessParams {
    fn default() -> Self {
        Self { alpha: 0.99 }
    }
}

impl SelectionFitnessParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::config(format!("alpha must lie in (0, 1], got {}", self.alpha)));
        }
        Ok(())
    }

    /// `alpha·(1 − accuracy) + (1 − alpha)·selected/total`.
    pub fn combine(&self, accuracy: f64, selected: usize, total: usize) -> f64 {
        self.alpha * (1.0 - accuracy) + (1.0 - self.alpha) * (selected as f64 / total as f64)
    }
}

/// Wrapper fitness of a mask: k-NN cross-validated error plus a subset-size
/// penalty, over a fold plan fixed for the whole search.
#[derive(Debug, Clone)]
pub struct SelectionFitness<'a> {
    pub data: &'a Dataset,
    pub plan: &'a FoldPlan,
    pub params: SelectionFitnessParams,
    pub knn: KnnParams,
}

impl<'a> SelectionFitness<'a> {
    pub fn new(
        data: &'a Dataset,
        plan: &'a FoldPlan,
        params: SelectionFitnessParams,
        knn: KnnParams,
    ) -> Result<Self> {
        params.validate()?;
        knn.validate()?;
        plan.check_rows(data.n_rows())?;
        Ok(Self { data, plan, params, knn })
    }

    pub fn n_features(&self) -> usize {
        self.data.n_features()
    }

    pub fn accuracy(&self, mask: &FeatureMask) -> Result<f64> {
        cv_accuracy(self.data, mask, self.plan, &self.knn)
    }

    pub fn evaluate(&self, mask: &FeatureMask) -> Result<f64> {
        let acc = self.accuracy(mask)?;
        Ok(self.params.combine(acc, mask.count(), mask.len()))
    }
}

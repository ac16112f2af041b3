use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::{seeded_rng, stream_id, StreamKind};

/// Frozen stratified assignment of rows to `k` folds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    k: usize,
    assignment: Vec<usize>,
}

impl FoldPlan {
    /// Shuffles each class's rows with the seeded stream, then deals them
    /// round-robin. The dealing position carries over between classes so fold
    /// sizes stay within one of each other.
    pub fn stratified(labels: &[u32], k: usize, seed: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::config(format!("need at least 2 folds, got {k}")));
        }
        if labels.len() < k {
            return Err(Error::config(format!(
                "{} rows cannot fill {k} folds",
                labels.len()
            )));
        }
        let mut by_class: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            by_class.entry(*l).or_default().push(i);
        }
        let mut rng = seeded_rng(seed, stream_id(StreamKind::Aux, 0, 1));
        let mut assignment = vec![0; labels.len()];
        let mut next = 0;
        for rows in by_class.values_mut() {
            rows.shuffle(&mut rng);
            for &r in rows.iter() {
                assignment[r] = next % k;
                next += 1;
            }
        }
        Ok(Self { k, assignment })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_rows(&self) -> usize {
        self.assignment.len()
    }

    pub fn fold_of(&self, row: usize) -> usize {
        self.assignment[row]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// `(train rows, test rows)` for fold `f`.
    pub fn split(&self, f: usize) -> (Vec<usize>, Vec<usize>) {
        (0..self.assignment.len()).partition(|&r| self.assignment[r] != f)
    }

    pub fn check_rows(&self, n_rows: usize) -> Result<()> {
        if n_rows != self.assignment.len() {
            return Err(Error::contract(format!(
                "fold plan covers {} rows, dataset has {n_rows}",
                self.assignment.len()
            )));
        }
        Ok(())
    }
}

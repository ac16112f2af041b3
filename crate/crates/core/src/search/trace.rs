use std::fmt::Write;

use serde::{Deserialize, Serialize};

/// Population state after one generation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    /// Generation number, starting at 1.
    pub iteration: usize,
    /// Best fitness seen so far.
    pub best_fitness: f64,
    /// Mean fitness of the current population.
    pub mean_fitness: f64,
    /// Cumulative objective evaluations, including initialization.
    pub evals: u64,
    /// Evaluations in this generation that returned a non-finite value.
    #[serde(default)]
    pub nonfinite: usize,
}

/// One record per generation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTrace {
    pub records: Vec<TraceRecord>,
}

impl ConvergenceTrace {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            records: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, record: TraceRecord) {
        self.records.push(record);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }

    pub fn best_fitness(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.best_fitness)
    }

    pub fn is_monotone(&self) -> bool {
        self.records
            .windows(2)
            .all(|w| w[1].best_fitness <= w[0].best_fitness)
    }

    pub fn nonfinite_total(&self) -> usize {
        self.records.iter().map(|r| r.nonfinite).sum()
    }

    /// CSV with header `iteration,best_fitness,mean_fitness,evals`. Reals use
    /// the shortest representation that round-trips (`{:?}` formatting).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,best_fitness,mean_fitness,evals\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{:?},{:?},{}",
                r.iteration, r.best_fitness, r.mean_fitness, r.evals
            );
        }
        out
    }
}

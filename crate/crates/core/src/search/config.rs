use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Population size, generation budget, seed and worker count for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub pop_size: usize,
    pub max_iters: usize,
    /// Worker threads for objective evaluation; 0 or 1 runs sequentially.
    pub threads: usize,
}

impl RunConfig {
    pub fn new(seed: u64, pop_size: usize, max_iters: usize) -> Self {
        Self {
            seed,
            pop_size,
            max_iters,
            threads: 0,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 2 {
            return Err(Error::config(format!(
                "pop_size must be at least 2, got {}",
                self.pop_size
            )));
        }
        if self.max_iters < 1 {
            return Err(Error::config("max_iters must be at least 1"));
        }
        Ok(())
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::new(42, 30, 500)
    }
}

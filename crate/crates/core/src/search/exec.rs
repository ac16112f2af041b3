use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::{Error, Result};

/// Runs independent per-item work either inline or on a private rayon pool.
/// Results always come back in input order.
pub enum Executor {
    Sequential,
    Pool(ThreadPool),
}

impl Executor {
    pub fn new(threads: usize) -> Result<Self> {
        if threads <= 1 {
            return Ok(Executor::Sequential);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map(Executor::Pool)
            .map_err(|e| Error::config(format!("cannot start thread pool: {e}")))
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Executor::Sequential => items.iter().map(f).collect(),
            Executor::Pool(pool) => pool.install(|| items.par_iter().map(f).collect()),
        }
    }
}

impl std::fmt::Debug for Executor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Executor::Sequential => write!(f, "Executor::Sequential"),
            Executor::Pool(p) => write!(f, "Executor::Pool({})", p.current_num_threads()),
        }
    }
}

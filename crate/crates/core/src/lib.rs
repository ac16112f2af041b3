//! Nature-inspired optimizers (HHO, BA, SSA, GWO), a hybrid HHO+BA wrapper
//! feature selector, a staged SSA→GWO tuner, and a deterministic CT slice
//! preprocessing chain (CLAHE, Gaussian blur, 3×3 median, min-max scaling).
//!
//! All randomness flows from [`search::seeded_rng`]; every agent draws from a
//! stream keyed by `(seed, iteration, agent)`, so sequential and multi-threaded
//! runs produce identical results.

// `!(x > y)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hybrid;
pub mod metaheuristics;
pub mod preprocess;
pub mod search;
pub mod surrogate;

pub use error::{Error, Result};

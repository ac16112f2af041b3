//! Shared search machinery: domains, agents, objectives, seeded randomness,
//! parallel evaluation and convergence traces.

pub(crate) mod agent;
mod config;
mod exec;
mod objective;
mod rng;
mod space;
mod trace;

pub use agent::{evaluate_population, Agent, PopulationEval};
pub use config::RunConfig;
pub use exec::Executor;
pub use objective::{Benchmark, Objective};
pub use rng::{seeded_rng, stream_id, RandomStream, StreamKind};
pub use space::{clamp, BinarySpace, BoundedSpace};
pub use trace::{ConvergenceTrace, TraceRecord};

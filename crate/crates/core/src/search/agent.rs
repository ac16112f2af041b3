use serde::{Deserialize, Serialize};

use crate::search::{Executor, Objective};

/// One candidate solution. Fitness is minimized; unevaluated agents carry
/// `+inf`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Agent {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub fitness: f64,
}

impl Agent {
    pub fn new(position: Vec<f64>) -> Self {
        let velocity = vec![0.0; position.len()];
        Self {
            position,
            velocity,
            fitness: f64::INFINITY,
        }
    }

    pub fn dims(&self) -> usize {
        self.position.len()
    }
}

/// Outcome of scoring a whole population.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PopulationEval {
    /// Index of the lowest fitness; ties go to the lowest index.
    pub best: usize,
    /// Evaluations whose value was NaN or infinite, recorded as `+inf`.
    pub nonfinite: usize,
}

/// Maps a raw objective value to a fitness: non-finite values become `+inf`.
pub(crate) fn sanitize(value: f64) -> (f64, bool) {
    if value.is_finite() {
        (value, false)
    } else {
        (f64::INFINITY, true)
    }
}

/// Index of the smallest value, first occurrence on ties.
pub(crate) fn argmin(values: impl IntoIterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        match best {
            Some((_, b)) if v >= b => {}
            Some((_, b)) if b.is_nan() || v.is_nan() => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

/// Scores every agent and reports the best one.
///
/// Panics on an empty population.
pub fn evaluate_population<O: Objective + ?Sized>(
    agents: &mut [Agent],
    objective: &O,
    exec: &Executor,
) -> PopulationEval {
    assert!(!agents.is_empty(), "cannot evaluate an empty population");
    let raw = exec.map(agents, |a| objective.evaluate(&a.position));
    let mut nonfinite = 0;
    for (agent, value) in agents.iter_mut().zip(raw) {
        let (fitness, bad) = sanitize(value);
        nonfinite += bad as usize;
        agent.fitness = fitness;
    }
    let best = argmin(agents.iter().map(|a| a.fitness)).unwrap_or(0);
    PopulationEval { best, nonfinite }
}

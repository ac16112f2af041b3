use crate::error::Result;
use crate::search::{
    seeded_rng, stream_id, Agent, BoundedSpace, ConvergenceTrace, Executor, Objective,
    RandomStream, RunConfig, StreamKind, TraceRecord,
};
use crate::search::agent::sanitize;

/// Result of a complete optimizer run.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub best: Agent,
    pub trace: ConvergenceTrace,
}

/// Everything a generation step needs besides the population itself: the
/// objective and domain, the seeded stream layout, the global elite and the
/// evaluation counters.
pub struct SearchContext<'a, O: Objective + ?Sized> {
    objective: &'a O,
    space: &'a BoundedSpace,
    config: &'a RunConfig,
    exec: Executor,
    best: Agent,
    has_best: bool,
    evals: u64,
    nonfinite: usize,
    trace: ConvergenceTrace,
}

impl<'a, O: Objective + ?Sized> SearchContext<'a, O> {
    pub fn new(objective: &'a O, space: &'a BoundedSpace, config: &'a RunConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            objective,
            space,
            config,
            exec: Executor::new(config.threads)?,
            best: Agent::new(space.lower().to_vec()),
            has_best: false,
            evals: 0,
            nonfinite: 0,
            trace: ConvergenceTrace::with_capacity(config.max_iters),
        })
    }

    pub fn space(&self) -> &BoundedSpace {
        self.space
    }

    pub fn config(&self) -> &RunConfig {
        self.config
    }

    pub fn best(&self) -> &Agent {
        &self.best
    }

    pub fn evals(&self) -> u64 {
        self.evals
    }

    pub fn trace(&self) -> &ConvergenceTrace {
        &self.trace
    }

    /// Fraction of the generation budget consumed before generation `t`.
    pub fn progress(&self, t: usize) -> f64 {
        t as f64 / self.config.max_iters as f64
    }

    pub fn rng(&self, kind: StreamKind, iteration: usize, agent: usize) -> RandomStream {
        seeded_rng(
            self.config.seed,
            stream_id(kind, iteration as u64, agent as u64),
        )
    }

    /// One stream per agent for generation `t`.
    pub fn agent_rngs(&self, t: usize, n: usize) -> Vec<RandomStream> {
        (0..n).map(|i| self.rng(StreamKind::Agent, t, i)).collect()
    }

    /// Uniform initial population. `seeds` (clamped) fill the first slots.
    pub fn init_population(&mut self, seeds: &[Vec<f64>]) -> Result<Vec<Agent>> {
        use rand::Rng;
        let n = self.config.pop_size;
        let mut positions = Vec::with_capacity(n);
        for i in 0..n {
            let x = match seeds.get(i) {
                Some(s) => crate::search::clamp(s, self.space)?,
                None => {
                    let mut rng = self.rng(StreamKind::Init, 0, i);
                    (0..self.space.dims())
                        .map(|d| {
                            let lo = self.space.lower()[d];
                            lo + self.space.width(d) * rng.random::<f64>()
                        })
                        .collect()
                }
            };
            positions.push(x);
        }
        let fitness = self.score(&positions);
        Ok(positions
            .into_iter()
            .zip(fitness)
            .map(|(p, f)| Agent {
                velocity: vec![0.0; p.len()],
                position: p,
                fitness: f,
            })
            .collect())
    }

    /// Evaluates positions (possibly concurrently), counts the evaluations
    /// and folds improvements into the elite. Non-finite values become `+inf`.
    pub fn score(&mut self, positions: &[Vec<f64>]) -> Vec<f64> {
        let objective = self.objective;
        let raw = self.exec.map(positions, |x| objective.evaluate(x));
        self.evals += positions.len() as u64;
        let mut out = Vec::with_capacity(raw.len());
        for (x, value) in positions.iter().zip(raw) {
            let (fitness, bad) = sanitize(value);
            self.nonfinite += bad as usize;
            if !self.has_best || fitness < self.best.fitness {
                self.has_best = true;
                self.best = Agent {
                    position: x.clone(),
                    velocity: vec![0.0; x.len()],
                    fitness,
                };
            }
            out.push(fitness);
        }
        out
    }

    /// Closes generation `t` (0-based) in the trace.
    pub fn record(&mut self, t: usize, agents: &[Agent]) {
        let mean = agents.iter().map(|a| a.fitness).sum::<f64>() / agents.len() as f64;
        self.trace.push(TraceRecord {
            iteration: t + 1,
            best_fitness: self.best.fitness,
            mean_fitness: mean,
            evals: self.evals,
            nonfinite: std::mem::take(&mut self.nonfinite),
        });
    }

    pub fn finish(self) -> Outcome {
        Outcome {
            best: self.best,
            trace: self.trace,
        }
    }
}

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::BoundedSpace;

/// A pure position → cost map. Lower is better.
pub trait Objective: Sync {
    fn evaluate(&self, x: &[f64]) -> f64;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn evaluate(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

/// Standard test functions, all with global minimum 0.
///
/// - sphere: `Σ x_i²`, minimum at the origin
/// - rosenbrock: `Σ 100 (x_{i+1} − x_i²)² + (1 − x_i)²`, minimum at `(1, …, 1)`
/// - rastrigin: `Σ x_i² − 10 cos(2π x_i) + 10`, minimum at the origin
/// - ackley: `20 − 20 exp(−0.2 √(Σ x_i²/d)) + e − exp(Σ cos(2π x_i)/d)`,
///   minimum at the origin
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Benchmark {
    Sphere,
    Rosenbrock,
    Rastrigin,
    Ackley,
}

impl Benchmark {
    pub const ALL: [Benchmark; 4] = [
        Benchmark::Sphere,
        Benchmark::Rosenbrock,
        Benchmark::Rastrigin,
        Benchmark::Ackley,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Benchmark::Sphere => "sphere",
            Benchmark::Rosenbrock => "rosenbrock",
            Benchmark::Rastrigin => "rastrigin",
            Benchmark::Ackley => "ackley",
        }
    }

    /// Conventional search box for each function.
    pub fn default_bounds(self) -> (f64, f64) {
        match self {
            Benchmark::Sphere | Benchmark::Rastrigin => (-5.12, 5.12),
            Benchmark::Rosenbrock => (-5.0, 10.0),
            Benchmark::Ackley => (-32.768, 32.768),
        }
    }

    pub fn default_space(self, dims: usize) -> Result<BoundedSpace> {
        let (lo, hi) = self.default_bounds();
        BoundedSpace::uniform(dims, lo, hi)
    }
}

impl Objective for Benchmark {
    fn evaluate(&self, x: &[f64]) -> f64 {
        match self {
            Benchmark::Sphere => x.iter().map(|v| v * v).sum(),
            Benchmark::Rosenbrock => x
                .windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
                .sum(),
            Benchmark::Rastrigin => x
                .iter()
                .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                .sum(),
            Benchmark::Ackley => {
                let d = x.len() as f64;
                let sq = x.iter().map(|v| v * v).sum::<f64>() / d;
                let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
                // grouped so the origin evaluates to exactly zero
                (20.0 - 20.0 * (-0.2 * sq.sqrt()).exp()) + (E - cs.exp())
            }
        }
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Benchmark {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Benchmark::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown objective '{s}'; valid: sphere, rosenbrock, rastrigin, ackley"
                ))
            })
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned box `lower[i] <= x[i] <= upper[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundedSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoundedSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::config("space must have at least one dimension"));
        }
        if lower.len() != upper.len() {
            return Err(Error::Dimension {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::config(format!("bound {i} is not finite")));
            }
            if lo > hi {
                return Err(Error::config(format!(
                    "lower bound {lo} exceeds upper bound {hi} in dimension {i}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lo, hi]` on every axis.
    pub fn uniform(dims: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dims], vec![hi; dims])
    }

    pub fn dims(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dims()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    /// In-place clamp; the caller guarantees the length.
    pub(crate) fn clamp_in_place(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dims());
        for ((v, lo), hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            // NaN collapses to the lower bound so a position is always feasible.
            *v = if v.is_nan() { *lo } else { v.max(*lo).min(*hi) };
        }
    }
}

/// Project `position` onto `space`.
pub fn clamp(position: &[f64], space: &BoundedSpace) -> Result<Vec<f64>> {
    if position.len() != space.dims() {
        return Err(Error::Dimension {
            expected: space.dims(),
            actual: position.len(),
        });
    }
    let mut out = position.to_vec();
    space.clamp_in_place(&mut out);
    Ok(out)
}

/// Bitmask domain over `n_bits` candidate features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinarySpace {
    n_bits: usize,
}

impl BinarySpace {
    pub fn new(n_bits: usize) -> Result<Self> {
        if n_bits == 0 {
            return Err(Error::config("binary space needs at least one bit"));
        }
        Ok(Self { n_bits })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }
}

use crate::error::{Error, Result};
use crate::hybrid::{FeatureMask, SelectionFitness};

pub const DEFAULT_ORACLE_LIMIT: usize = 15;

/// Scores all `2^N − 1` non-empty masks and returns the minimum. Ties prefer
/// fewer selected features, then the lexicographically smaller list of
/// selected indices.
pub fn brute_force_best_mask(
    fitness: &SelectionFitness<'_>,
    n_limit: usize,
) -> Result<(FeatureMask, f64)> {
    let n = fitness.n_features();
    if n > n_limit || n >= 64 {
        return Err(Error::config(format!(
            "exhaustive search over {n} features exceeds the limit of {n_limit}"
        )));
    }
    let mut best: Option<(FeatureMask, f64)> = None;
    for code in 1u64..(1u64 << n) {
        let mask = FeatureMask::from_code(code, n);
        let f = fitness.evaluate(&mask)?;
        let better = match &best {
            None => true,
            Some((m, bf)) => {
                f < *bf
                    || (f == *bf
                        && (mask.count(), mask.selected()) < (m.count(), m.selected()))
            }
        };
        if better {
            best = Some((mask, f));
        }
    }
    Ok(best.expect("at least one non-empty mask"))
}

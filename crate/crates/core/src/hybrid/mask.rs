use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::search::RandomStream;

/// Non-empty feature subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatureMask {
    bits: Vec<bool>,
}

impl FeatureMask {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if !bits.iter().any(|b| *b) {
            return Err(Error::contract("feature mask selects no features"));
        }
        Ok(Self { bits })
    }

    pub fn full(n: usize) -> Self {
        assert!(n > 0, "mask needs at least one feature");
        Self { bits: vec![true; n] }
    }

    /// Bit `i` of `code` selects feature `i`.
    pub fn from_code(code: u64, n: usize) -> Self {
        debug_assert!(code != 0 && n <= 64);
        Self {
            bits: (0..n).map(|i| (code >> i) & 1 == 1).collect(),
        }
    }

    pub fn from_truth(truth: &[bool]) -> Result<Self> {
        Self::new(truth.to_vec())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn selected(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.then_some(i))
            .collect()
    }

    /// `(recall, precision)` of the selection against a ground-truth mask.
    /// Either is `None` when its denominator is zero.
    pub fn recall_precision(&self, truth: &[bool]) -> (Option<f64>, Option<f64>) {
        let hits = self.bits.iter().zip(truth).filter(|(a, b)| **a && **b).count();
        let relevant = truth.iter().filter(|b| **b).count();
        let recall = (relevant > 0).then(|| hits as f64 / relevant as f64);
        let precision = Some(hits as f64 / self.count() as f64);
        (recall, precision)
    }

    pub fn to_string_bits(&self) -> String {
        self.bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
    }
}

impl Serialize for FeatureMask {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.bits.iter().map(|b| *b as u8))
    }
}

impl<'de> Deserialize<'de> for FeatureMask {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<u8> = Vec::deserialize(d)?;
        FeatureMask::new(raw.into_iter().map(|b| b != 0).collect()).map_err(serde::de::Error::custom)
    }
}

/// V-shaped transfer function `|tanh(x)|`.
pub fn transfer(x: f64) -> f64 {
    x.tanh().abs()
}

/// Bit `i` is set iff a uniform draw falls below `|tanh(x_i)|`. May return
/// an empty selection.
pub fn binarize_raw(position: &[f64], rng: &mut RandomStream) -> Vec<bool> {
    position
        .iter()
        .map(|x| rng.random::<f64>() < transfer(*x))
        .collect()
}

/// Identity on non-empty selections; otherwise sets one uniformly chosen bit.
pub fn repair_mask(mut bits: Vec<bool>, rng: &mut RandomStream) -> Result<FeatureMask> {
    if bits.is_empty() {
        return Err(Error::contract("mask has no bits"));
    }
    if !bits.iter().any(|b| *b) {
        let i = rng.random_range(0..bits.len());
        bits[i] = true;
    }
    FeatureMask::new(bits)
}

pub fn binarize(position: &[f64], rng: &mut RandomStream) -> Result<FeatureMask> {
    let raw = binarize_raw(position, rng);
    repair_mask(raw, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::seeded_rng;
    use proptest::prelude::*;

    #[test]
    fn zero_position_needs_repair() {
        let mut rng = seeded_rng(0, 0);
        assert_eq!(binarize_raw(&[0.0; 5], &mut rng), vec![false; 5]);
        let m = binarize(&[0.0; 5], &mut rng).unwrap();
        assert_eq!(m.count(), 1);
    }

    #[test]
    fn saturated_position_sets_bits() {
        let mut rng = seeded_rng(1, 0);
        for _ in 0..100 {
            assert_eq!(binarize_raw(&[40.0, -40.0], &mut rng), vec![true, true]);
        }
    }

    #[test]
    fn transfer_against_fixed_draws() {
        // draws 0.3, 0.4, 0.2 against |tanh| of [10, -10, 0]
        let p: Vec<f64> = [10.0, -10.0, 0.0].iter().map(|x| transfer(*x)).collect();
        let bits: Vec<bool> = p.iter().zip([0.3, 0.4, 0.2]).map(|(p, u)| u < *p).collect();
        assert_eq!(bits, vec![true, true, false]);
        assert!(p[0] > 0.99999 && p[2] == 0.0);
    }

    #[test]
    fn repair_examples() {
        let mut rng = seeded_rng(2, 0);
        let m = repair_mask(vec![true, false, true], &mut rng).unwrap();
        assert_eq!(m.bits(), &[true, false, true]);
        let m = repair_mask(vec![false; 3], &mut rng).unwrap();
        assert_eq!(m.count(), 1);
        let m = repair_mask(vec![false], &mut rng).unwrap();
        assert_eq!(m.bits(), &[true]);
        assert!(repair_mask(vec![], &mut rng).is_err());
    }

    #[test]
    fn mask_codes_and_serde() {
        let m = FeatureMask::from_code(0b101, 4);
        assert_eq!(m.selected(), vec![0, 2]);
        assert_eq!(serde_json::to_string(&m).unwrap(), "[1,0,1,0]");
        let back: FeatureMask = serde_json::from_str("[1,0,1,0]").unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<FeatureMask>("[0,0]").is_err());
        assert_eq!(m.recall_precision(&[true, true, false, false]), (Some(0.5), Some(0.5)));
    }

    proptest! {
        #[test]
        fn binarized_masks_are_never_empty(
            position in proptest::collection::vec(-4.0f64..4.0, 1..20),
            seed in any::<u64>(),
        ) {
            let mut rng = seeded_rng(seed, 0);
            let m = binarize(&position, &mut rng).unwrap();
            prop_assert!(m.count() >= 1);
            prop_assert_eq!(m.len(), position.len());
        }
    }
}

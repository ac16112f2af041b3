use serde::{Deserialize, Serialize};

/// Binary confusion counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

/// Classification metrics; `None` marks a 0/0 ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: Option<f64>,
    pub sensitivity: Option<f64>,
    pub specificity: Option<f64>,
    pub precision: Option<f64>,
    pub f1: Option<f64>,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }

    /// One-vs-rest counts treating `positive` as the positive class.
    pub fn from_predictions(truth: &[u32], predicted: &[u32], positive: u32) -> Self {
        let mut c = Self::default();
        for (t, p) in truth.iter().zip(predicted) {
            match (*t == positive, *p == positive) {
                (true, true) => c.tp += 1,
                (false, true) => c.fp += 1,
                (false, false) => c.tn += 1,
                (true, false) => c.fn_ += 1,
            }
        }
        c
    }
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

pub fn metrics_from_confusion(c: &ConfusionCounts) -> Metrics {
    let sensitivity = ratio(c.tp, c.tp + c.fn_);
    let precision = ratio(c.tp, c.tp + c.fp);
    let f1 = match (precision, sensitivity) {
        (Some(p), Some(s)) if p + s > 0.0 => Some(2.0 * p * s / (p + s)),
        _ => None,
    };
    Metrics {
        accuracy: ratio(c.tp + c.tn, c.total()),
        sensitivity,
        specificity: ratio(c.tn, c.tn + c.fp),
        precision,
        f1,
    }
}

/// Macro average of one-vs-rest metrics over `classes`. A metric undefined
/// for some class is averaged over the classes where it is defined.
pub fn macro_metrics(truth: &[u32], predicted: &[u32], classes: &[u32]) -> Metrics {
    let per_class: Vec<Metrics> = classes
        .iter()
        .map(|&c| metrics_from_confusion(&ConfusionCounts::from_predictions(truth, predicted, c)))
        .collect();
    let avg = |get: fn(&Metrics) -> Option<f64>| {
        let vals: Vec<f64> = per_class.iter().filter_map(get).collect();
        (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    };
    Metrics {
        accuracy: avg(|m| m.accuracy),
        sensitivity: avg(|m| m.sensitivity),
        specificity: avg(|m| m.specificity),
        precision: avg(|m| m.precision),
        f1: avg(|m| m.f1),
    }
}

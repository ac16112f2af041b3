use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major feature matrix with integer class labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    rows: Vec<Vec<f64>>,
    labels: Vec<u32>,
    feature_names: Vec<String>,
    ground_truth: Option<Vec<bool>>,
}

/// Optional JSON sidecar next to a dataset CSV marking informative features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthSidecar {
    pub ground_truth_mask: Vec<u8>,
}

/// `data.csv` → `data.truth.json`.
pub fn truth_sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("truth.json")
}

impl Dataset {
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<u32>, feature_names: Vec<String>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::config("dataset has no rows"));
        }
        if rows.len() != labels.len() {
            return Err(Error::config(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        let n = feature_names.len();
        if n == 0 {
            return Err(Error::config("dataset has no features"));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dataset {
                    row: r,
                    column: row.len().min(n),
                    message: format!("expected {n} features, found {}", row.len()),
                });
            }
            if let Some(c) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Dataset {
                    row: r,
                    column: c,
                    message: "non-finite feature value".into(),
                });
            }
        }
        Ok(Self {
            rows,
            labels,
            feature_names,
            ground_truth: None,
        })
    }

    pub fn with_ground_truth(mut self, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != self.n_features() {
            return Err(Error::Dimension {
                expected: self.n_features(),
                actual: mask.len(),
            });
        }
        self.ground_truth = Some(mask);
        Ok(self)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn ground_truth(&self) -> Option<&[bool]> {
        self.ground_truth.as_deref()
    }

    /// Distinct labels in ascending order.
    pub fn classes(&self) -> Vec<u32> {
        self.labels.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Errors unless at least two classes are present.
    pub fn require_classification(&self) -> Result<()> {
        if self.classes().len() < 2 {
            return Err(Error::config("dataset must contain at least two classes"));
        }
        Ok(())
    }

    /// Parses CSV with a header row whose last column is `label`. Error
    /// positions are 1-based file lines and columns.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .from_reader(reader);
        let header = rdr.headers().map_err(|e| csv_error(e, 1))?.clone();
        let width = header.len();
        if width < 2 || header.get(width - 1).map(str::trim) != Some("label") {
            return Err(Error::Dataset {
                row: 1,
                column: width.max(1),
                message: "last header column must be named 'label' after at least one feature"
                    .into(),
            });
        }
        let names: Vec<String> = header.iter().take(width - 1).map(|s| s.trim().to_string()).collect();
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let line = i + 2;
            let record = record.map_err(|e| csv_error(e, line))?;
            if record.len() != width {
                return Err(Error::Dataset {
                    row: line,
                    column: record.len().min(width) + 1,
                    message: format!("expected {width} fields, found {}", record.len()),
                });
            }
            let mut row = Vec::with_capacity(width - 1);
            for (c, field) in record.iter().take(width - 1).enumerate() {
                let v: f64 = field.trim().parse().map_err(|_| Error::Dataset {
                    row: line,
                    column: c + 1,
                    message: format!("'{field}' is not a number"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Dataset {
                        row: line,
                        column: c + 1,
                        message: "non-finite feature value".into(),
                    });
                }
                row.push(v);
            }
            let raw = record.get(width - 1).unwrap_or("").trim();
            let label: u32 = raw.parse().map_err(|_| Error::Dataset {
                row: line,
                column: width,
                message: format!("label '{raw}' is not a non-negative integer"),
            })?;
            rows.push(row);
            labels.push(label);
        }
        if rows.is_empty() {
            return Err(Error::Dataset {
                row: 2,
                column: 1,
                message: "no data rows".into(),
            });
        }
        Dataset::new(rows, labels, names)
    }

    /// Reads `path` and, when present, its `.truth.json` sidecar.
    pub fn read_csv(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        let data = Self::from_csv_reader(std::io::BufReader::new(file))?;
        let sidecar = truth_sidecar_path(path);
        if sidecar.exists() {
            let truth: TruthSidecar = serde_json::from_slice(&std::fs::read(&sidecar)?)?;
            return data.with_ground_truth(truth.ground_truth_mask.iter().map(|b| *b != 0).collect());
        }
        Ok(data)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.feature_names.join(",");
        out.push_str(",label\n");
        for (row, label) in self.rows.iter().zip(&self.labels) {
            for v in row {
                let _ = write!(out, "{v:?},");
            }
            let _ = writeln!(out, "{label}");
        }
        out
    }

    pub fn truth_sidecar(&self) -> Option<TruthSidecar> {
        self.ground_truth.as_ref().map(|m| TruthSidecar {
            ground_truth_mask: m.iter().map(|b| *b as u8).collect(),
        })
    }
}

fn csv_error(e: csv::Error, fallback_line: usize) -> Error {
    let line = e
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(fallback_line);
    Error::Dataset {
        row: line,
        column: 0,
        message: e.to_string(),
    }
}

pub mod optimize;
pub mod preprocess;
pub mod select;
pub mod synth;
pub mod tune;

use std::path::Path;

use neoplasm_opt::surrogate::{truth_sidecar_path, Dataset, TruthSidecar};

use crate::failure::Failure;
use crate::output::{read_input, InputRecord};

/// Reads a dataset CSV plus its optional ground-truth sidecar.
pub(crate) fn load_dataset(path: &Path, inputs: &mut Vec<InputRecord>) -> Result<Dataset, Failure> {
    let bytes = read_input(path, inputs)?;
    let data = Dataset::from_csv_reader(&bytes[..])?;
    let sidecar = truth_sidecar_path(path);
    if !sidecar.exists() {
        return Ok(data);
    }
    let raw = read_input(&sidecar, inputs)?;
    let truth: TruthSidecar = serde_json::from_slice(&raw)
        .map_err(|e| Failure::usage(format!("{}: {e}", sidecar.display())))?;
    Ok(data.with_ground_truth(truth.ground_truth_mask.iter().map(|b| *b != 0).collect())?)
}

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::failure::Failure;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads an input file, remembering its hash for the manifest.
pub fn read_input(path: &Path, inputs: &mut Vec<InputRecord>) -> Result<Vec<u8>, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    inputs.push(InputRecord {
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
    });
    Ok(bytes)
}

/// Writes via a temporary file in the target directory and renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: &dyn std::fmt::Display| Failure::runtime(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| fail(&e))?;
    tmp.write_all(bytes).map_err(|e| fail(&e))?;
    tmp.as_file().sync_all().map_err(|e| fail(&e))?;
    tmp.persist(path).map_err(|e| fail(&e.error))?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>, Failure> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(Failure::runtime)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// `dir/result.json` → `dir/result<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

pub fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

#[derive(Debug, Serialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

/// Provenance record written next to every run's outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a, C: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: Option<u64>,
    pub config: &'a C,
    pub inputs: Vec<InputRecord>,
    pub outputs: Vec<String>,
    pub threads: usize,
    pub wall_clock_secs: f64,
}

/// Collects outputs and writes the manifest (`<out stem>.manifest.json`)
/// once every output is in place.
pub struct Run {
    command: &'static str,
    started: Instant,
    pub inputs: Vec<InputRecord>,
    outputs: Vec<PathBuf>,
}

impl Run {
    pub fn start(command: &'static str) -> Self {
        Self {
            command,
            started: Instant::now(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn write(&mut self, path: &Path, bytes: &[u8]) -> Result<(), Failure> {
        write_atomic(path, bytes)?;
        self.outputs.push(path.to_path_buf());
        Ok(())
    }

    pub fn finish<C: Serialize>(
        self,
        primary: &Path,
        config: &C,
        seed: Option<u64>,
        threads: usize,
    ) -> Result<PathBuf, Failure> {
        let manifest_path = sibling(primary, ".manifest.json");
        let manifest = RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            seed,
            config,
            inputs: self.inputs,
            outputs: self.outputs.iter().map(|p| p.display().to_string()).collect(),
            threads,
            wall_clock_secs: self.started.elapsed().as_secs_f64(),
        };
        write_atomic(&manifest_path, &to_json(&manifest)?)?;
        Ok(manifest_path)
    }
}

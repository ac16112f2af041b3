use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::failure::Failure;

pub const THREADS_ENV: &str = "NEOPLASM_OPT_THREADS";

/// Worker threads from the environment; unset, empty or 0 means sequential.
pub fn threads_from_env() -> Result<usize, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(s) if s.trim().is_empty() => Ok(0),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{THREADS_ENV} must be a non-negative integer, got '{s}'"))),
        Err(_) => Ok(0),
    }
}

/// Loads a command config from `path`, or defaults when absent. A run
/// manifest is accepted too: its `config` field is used.
pub fn load<T: DeserializeOwned + Default>(path: Option<&Path>, command: &str) -> Result<T, Failure> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut value: Value = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::usage(format!("config {}: {e}", path.display())))?;
    if let Some(obj) = value.as_object_mut() {
        if obj.contains_key("config") && obj.contains_key("command") {
            if let Some(cmd) = obj.get("command").and_then(Value::as_str) {
                if cmd != command {
                    return Err(Failure::usage(format!(
                        "manifest {} is for '{cmd}', not '{command}'",
                        path.display()
                    )));
                }
            }
            value = obj.remove("config").unwrap_or(Value::Null);
        }
    }
    serde_json::from_value(value).map_err(|e| Failure::usage(format!("config {}: {e}", path.display())))
}

/// Overwrites `slot` when the flag was given.
pub fn set<T>(slot: &mut T, flag: Option<T>) {
    if let Some(v) = flag {
        *slot = v;
    }
}

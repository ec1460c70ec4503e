//! Run manifests embedded in every output file: enough metadata to rerun
//! the command and a digest of the result payload.  Two runs with the same
//! manifest settings produce the same digest.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tolerances: BTreeMap<String, f64>,
    pub version: String,
    pub wall_ms: u64,
    pub result_digest: String,
}

impl RunManifest {
    pub fn new(command: impl Into<String>) -> Self {
        RunManifest {
            command: command.into(),
            group: None,
            inputs: Vec::new(),
            seed: None,
            tolerances: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_ms: 0,
            result_digest: String::new(),
        }
    }

    pub fn with_group(mut self, spec: impl Into<String>) -> Self {
        self.group = Some(spec.into());
        self
    }

    pub fn with_input(mut self, path: impl Into<String>) -> Self {
        self.inputs.push(path.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_tolerance(mut self, name: &str, tol: f64) -> Self {
        self.tolerances.insert(name.to_string(), tol);
        self
    }

    /// Fills the digest from the result payload.  The digest covers the
    /// payload only, never the wall clock.
    pub fn finish(mut self, result: &serde_json::Value, wall_ms: u64) -> Self {
        self.result_digest = digest_value(result);
        self.wall_ms = wall_ms;
        self
    }
}

/// Hex SHA-256 of the canonical JSON encoding (object keys sorted).
pub fn digest_value(v: &serde_json::Value) -> String {
    let canonical = serde_json::to_string(v).expect("JSON values always serialize");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

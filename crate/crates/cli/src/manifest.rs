//! Run manifests: what was run, with which parameters, what it concluded
//! and checksums of the certificates it produced.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    /// SHA-256 of each certificate's bytes.
    pub artifacts: BTreeMap<String, String>,
    pub verdicts: BTreeMap<String, String>,
    pub seconds: BTreeMap<String, f64>,
    pub tool_version: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            ..Default::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn artifact(&mut self, name: &str, bytes: &[u8]) -> &mut Self {
        self.artifacts.insert(name.to_string(), sha256_hex(bytes));
        self
    }

    pub fn verdict(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.verdicts.insert(name.to_string(), value.to_string());
        self
    }

    pub fn time(&mut self, name: &str, seconds: f64) -> &mut Self {
        self.seconds.insert(name.to_string(), seconds);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serialization cannot fail")
    }

    /// Same verdicts and certificate checksums; timings may differ.
    pub fn reproduces(&self, other: &RunManifest) -> bool {
        self.command == other.command
            && self.parameters == other.parameters
            && self.verdicts == other.verdicts
            && self.artifacts == other.artifacts
    }
}

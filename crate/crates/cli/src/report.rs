//! Reproducible run reports.
//!
//! Every subcommand emits a [`RunReport`]: a `scope` block describing the
//! inputs and results exactly, a `scope_digest` (SHA-256 of the compact JSON
//! encoding of the scope), and wall-clock timings. Timings sit outside the
//! digest so two runs over the same data agree on the digest even when the
//! machine does not. `serde_json` is built with sorted maps here, so the
//! serialized bytes — and therefore the digest — are deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Everything that determines the result of a run.
///
/// Fields are declared in alphabetical order so the struct serializes with
/// the same key order as a parsed-and-reserialized `serde_json::Value`;
/// anyone holding a report can recompute `scope_digest` from its `scope`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scope {
    /// Subcommand name.
    pub command: String,
    /// Flags that affect the computation, normalized to strings.
    pub flags: BTreeMap<String, String>,
    /// SHA-256 of the input file bytes, or the generator spec for generated
    /// input, or "none".
    pub input_digest: String,
    /// Subcommand-specific results.
    pub payload: serde_json::Value,
    /// Seeds consumed, in order.
    pub seeds: Vec<u64>,
    /// Version of this tool (crate version).
    pub tool_version: String,
}

/// A complete run report, ready to serialize.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub scope: Scope,
    /// SHA-256 (hex) of the compact JSON encoding of `scope`.
    pub scope_digest: String,
    /// Wall-clock timings per phase, milliseconds. Not part of the digest.
    pub timings_ms: BTreeMap<String, u64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        use std::fmt::Write;
        write!(out, "{byte:02x}").expect("writing to a String cannot fail");
    }
    out
}

impl RunReport {
    pub fn new(scope: Scope, timings_ms: BTreeMap<String, u64>) -> Self {
        let compact = serde_json::to_string(&scope).expect("scope serializes");
        let scope_digest = sha256_hex(compact.as_bytes());
        RunReport { scope, scope_digest, timings_ms }
    }

    /// The canonical output encoding: pretty JSON plus a final newline.
    pub fn to_json_pretty(&self) -> String {
        format!("{}\n", serde_json::to_string_pretty(self).expect("report serializes"))
    }
}

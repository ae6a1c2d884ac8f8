//! Run manifest: provenance for an emitted CSV.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

/// Sidecar record written next to every CSV. The config hash covers the
/// config bytes only; timestamps are informational and never hashed, so
/// rerunning the same config leaves the CSV bytes unchanged.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub kind: String,
    pub seed: u64,
    pub config_sha256: String,
    pub workers: usize,
    pub started_at: String,
    pub finished_at: String,
    pub rows: usize,
    pub violations: usize,
    pub output: String,
    pub provenance: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn timestamp() -> String {
    OffsetDateTime::now_utc()
        .format(&Rfc3339)
        .unwrap_or_else(|_| "unknown".into())
}

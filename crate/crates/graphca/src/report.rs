//! Machine-readable command reports: JSON on stdout, one object per run.

use std::fs;
use std::path::Path;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct InputRecord {
    pub path: String,
    /// FNV-1a 64-bit hash of the file bytes, hex-encoded.
    pub fnv64: String,
}

#[derive(Debug, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub inputs: Vec<InputRecord>,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<serde_json::Value>,
    pub wall_time_ms: u64,
}

pub fn fnv64(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

pub fn input_record(path: &Path) -> InputRecord {
    let hash = fs::read(path).map(|bytes| fnv64(&bytes)).unwrap_or_default();
    InputRecord {
        path: path.display().to_string(),
        fnv64: hash,
    }
}

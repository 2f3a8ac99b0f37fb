//! Provenance record for a run: what was asked, what went in, what came out.

use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct InputRecord {
    pub role: String,
    pub spec: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OutputRecord {
    /// File path, or `-` for standard output.
    pub path: String,
    pub sha256: String,
}

impl OutputRecord {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        OutputRecord {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub inputs: Vec<InputRecord>,
    pub threads: usize,
    pub wall_ms: f64,
    pub exit_code: i32,
    pub outputs: Vec<OutputRecord>,
}

impl RunManifest {
    pub fn new(
        command: Vec<String>,
        inputs: Vec<InputRecord>,
        elapsed: Duration,
        exit_code: i32,
        outputs: Vec<OutputRecord>,
    ) -> Self {
        RunManifest {
            schema: 1,
            tool: "supersat",
            version: env!("CARGO_PKG_VERSION"),
            command,
            inputs,
            threads: rayon::current_num_threads(),
            wall_ms: elapsed.as_secs_f64() * 1e3,
            exit_code,
            outputs,
        }
    }
}

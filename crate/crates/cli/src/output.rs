use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use invcensus_core::CACHE_FORMAT_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct Versions {
    tool: &'static str,
    cache_format: u32,
}

#[derive(Serialize)]
struct Timing {
    wall_ms: u128,
}

/// Stable JSON wrapper around every command's result.
#[derive(Serialize)]
pub struct OutputEnvelope {
    command: &'static str,
    input: Value,
    result: Value,
    versions: Versions,
    timing: Timing,
}

impl OutputEnvelope {
    pub fn new(command: &'static str, input: Value, result: Value, started: Instant) -> Self {
        OutputEnvelope {
            command,
            input,
            result,
            versions: Versions {
                tool: env!("CARGO_PKG_VERSION"),
                cache_format: CACHE_FORMAT_VERSION,
            },
            timing: Timing {
                wall_ms: started.elapsed().as_millis(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }
}

/// Result of a command: the JSON payload plus its text rendering.
pub struct Rendered {
    pub input: Value,
    pub result: Value,
    pub text: String,
    /// Nonzero when the command ran but reports a failed check.
    pub status: u8,
}

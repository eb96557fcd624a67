//! Run manifests: everything needed to reproduce a run byte-for-byte.
//!
//! A manifest records the tool version, the command, the *resolved*
//! scenario (presets expanded, units converted — no external files
//! needed), the RNG contract for stochastic runs, the evaluated results
//! with their diagnostic flags, and SHA-256 digests of every output file.
//! `satrep rerun manifest.json` re-executes the run from this record and
//! fails (exit 3) if any regenerated file's digest differs.

use crate::error::CliError;
use crate::sweep::SweepAxis;
use satrep_core::{PointResult, Scenario};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;

/// Name and version of the producing binary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    /// Binary name.
    pub name: String,
    /// Crate version at build time.
    pub version: String,
}

impl ToolInfo {
    /// This binary's identity.
    pub fn current() -> Self {
        ToolInfo {
            name: "satrep".to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }
}

/// The subcommand a manifest reproduces, with its full argument set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum CommandSpec {
    /// Single-scenario evaluation.
    Run,
    /// One-axis sweep over an inclusive grid.
    Sweep {
        /// Swept scenario knob.
        axis: SweepAxis,
        /// First grid value.
        from: f64,
        /// Last grid value (inclusive).
        to: f64,
        /// Grid spacing.
        step: f64,
    },
    /// Monte Carlo cross-check of the analytic rate.
    Validate {
        /// Number of independent waiting-time samples.
        trials: u64,
        /// Base RNG seed.
        seed: u64,
    },
}

/// RNG contract of a stochastic run: seeds are portable to any
/// implementation honoring the named algorithm and streaming scheme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngSpec {
    /// Generator family (`ChaCha8`).
    pub algorithm: String,
    /// Base seed; trial `i` draws from stream `i`.
    pub seed: u64,
    /// Trial count.
    pub trials: u64,
    /// Whether each trial owns an RNG stream (always true here; it is what
    /// makes results independent of the worker count).
    pub stream_per_trial: bool,
}

/// A complete, re-executable record of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    /// Producing binary.
    pub tool: ToolInfo,
    /// Command to re-execute.
    pub command: CommandSpec,
    /// Fully resolved scenario (self-contained; atmosphere table inline).
    pub scenario: Scenario,
    /// RNG contract (stochastic commands only).
    pub rng: Option<RngSpec>,
    /// Evaluated rows, including diagnostic flags that the CSV omits.
    pub results: Vec<PointResult>,
    /// `file name → SHA-256` for every output written beside the manifest.
    pub outputs: BTreeMap<String, String>,
}

impl Manifest {
    /// Serialize as pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    /// Read and parse a manifest file.
    ///
    /// # Errors
    ///
    /// [`CliError::Usage`] on IO or parse failure.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("invalid manifest {}: {e}", path.display())))
    }
}

/// Hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

//! Library half of the `satrep` command-line tool.
//!
//! The binary in `main.rs` is a thin argument-parsing shell; everything
//! testable lives here: scenario-file loading and resolution
//! ([`config`]), the fixed CSV schema and float formatting ([`output`]),
//! sweep grids ([`sweep`]), run manifests with digests ([`manifest`]),
//! and the exit-code taxonomy ([`error`]).

pub mod config;
pub mod error;
pub mod manifest;
pub mod output;
pub mod sweep;

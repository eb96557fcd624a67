//! Sweep axes, grid construction, and per-point scenario derivation.
//!
//! A sweep varies exactly one knob of a base scenario over an inclusive
//! arithmetic grid. Points are evaluated independently (in parallel) and
//! rows are emitted in ascending axis order, so output bytes do not depend
//! on scheduling.

use crate::error::CliError;
use satrep_core::Scenario;
use serde::{Deserialize, Serialize};

/// Which scenario knob a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum SweepAxis {
    /// Total ground distance, km.
    GroundDistance,
    /// Satellite altitude, km (satellite modes only).
    Altitude,
    /// Source heralding efficiency.
    EtaSource,
    /// Non-destructive photon-detector efficiency.
    EtaQnd,
    /// Memory write efficiency.
    EtaMemWrite,
    /// Memory read efficiency.
    EtaMemRead,
    /// Detector efficiency.
    EtaDetector,
}

impl SweepAxis {
    /// The axis name as accepted on the command line.
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepAxis::GroundDistance => "ground_distance",
            SweepAxis::Altitude => "altitude",
            SweepAxis::EtaSource => "eta_source",
            SweepAxis::EtaQnd => "eta_qnd",
            SweepAxis::EtaMemWrite => "eta_mem_write",
            SweepAxis::EtaMemRead => "eta_mem_read",
            SweepAxis::EtaDetector => "eta_detector",
        }
    }
}

/// Build the inclusive grid `from, from+step, …` up to `to` (a half-step
/// of float slack keeps `to` itself on the grid).
///
/// # Errors
///
/// [`CliError::Usage`] when the grid would be empty or the bounds are not
/// finite (`step <= 0`, `to < from`).
pub fn build_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !from.is_finite() || !to.is_finite() || !step.is_finite() {
        return Err(CliError::usage("sweep bounds and step must be finite"));
    }
    if step <= 0.0 {
        return Err(CliError::usage(format!(
            "sweep step must be > 0, got {step}"
        )));
    }
    if to < from {
        return Err(CliError::usage(format!(
            "empty sweep grid: --to {to} is below --from {from}"
        )));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| from + k as f64 * step).collect())
}

/// Derive the scenario for one grid point from the base scenario.
///
/// # Errors
///
/// [`CliError::Usage`] when the axis does not apply to the scenario's mode
/// (altitude sweeps need a satellite).
pub fn apply(axis: SweepAxis, value: f64, base: &Scenario) -> Result<Scenario, CliError> {
    let mut s = base.clone();
    match axis {
        SweepAxis::GroundDistance => s.ground_distance_m = value * 1e3,
        SweepAxis::Altitude => match &mut s.orbit {
            Some(orbit) => orbit.altitude_m = value * 1e3,
            None => {
                return Err(CliError::usage(
                    "altitude sweep requires a satellite mode, not fiber",
                ))
            }
        },
        SweepAxis::EtaSource => s.efficiencies.source = value,
        SweepAxis::EtaQnd => s.efficiencies.qnd = value,
        SweepAxis::EtaMemWrite => s.efficiencies.mem_write = value,
        SweepAxis::EtaMemRead => s.efficiencies.mem_read = value,
        SweepAxis::EtaDetector => s.efficiencies.detector = value,
    }
    Ok(s)
}

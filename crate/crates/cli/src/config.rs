//! TOML scenario files and their resolution into fully-typed scenarios.
//!
//! The on-disk format is a flat key-value table with optional keys backed
//! by benchmark defaults. Resolution expands presets (the calibrated
//! atmosphere, the geostationary altitude), converts the human units of
//! the file (km, nm, µrad, degrees) into the SI units of the library, and
//! validates cross-field consistency. The *resolved* scenario — not the
//! file — is what run manifests embed, so defaults can evolve without
//! breaking reproducibility.

use crate::error::CliError;
use satrep_core::orbital::geostationary_altitude_m;
use satrep_core::{
    AtmosphereTable, BackgroundEnvironment, CoincidenceModel, Efficiencies, Mode, Nesting,
    OpticalChannel, OrbitDirection, OrbitSpec, Scenario,
};
use serde::Deserialize;
use std::path::Path;

fn d_nesting() -> Nesting {
    Nesting::Auto
}
fn d_wavelength_nm() -> f64 {
    580.0
}
fn d_tx_aperture_m() -> f64 {
    0.5
}
fn d_rx_aperture_m() -> f64 {
    1.0
}
fn d_pointing_sigma_urad() -> f64 {
    0.5
}
fn d_atmosphere() -> String {
    "calibrated-default".to_owned()
}
fn d_source_rate_hz() -> f64 {
    1e7
}
fn d_eta() -> f64 {
    0.9
}
fn d_background() -> BackgroundEnvironment {
    BackgroundEnvironment::Day
}
fn d_fov_urad() -> f64 {
    10.0
}
fn d_step_s() -> f64 {
    10.0
}
fn d_min_elevation_deg() -> f64 {
    10.0
}
fn d_true() -> bool {
    true
}

/// One scenario file, as written on disk (human units, optional keys).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    /// `repeater`, `direct`, or `fiber`.
    pub mode: Mode,
    /// Total ground distance between the end stations, km.
    pub ground_distance_km: f64,
    /// Circular-orbit altitude, km (satellite modes; exclusive with
    /// `geostationary`).
    #[serde(default)]
    pub altitude_km: Option<f64>,
    /// Put the satellite at the exact geostationary altitude, co-rotating.
    #[serde(default)]
    pub geostationary: bool,
    /// `counter-rotating` (default) or `co-rotating`.
    #[serde(default)]
    pub direction: Option<OrbitDirection>,
    /// Repeater nesting depth: an integer or `"auto"` (default).
    #[serde(default = "d_nesting")]
    pub nesting: Nesting,
    /// Photon wavelength, nm. Default 580.
    #[serde(default = "d_wavelength_nm")]
    pub wavelength_nm: f64,
    /// Transmitter aperture diameter, m. Default 0.5.
    #[serde(default = "d_tx_aperture_m")]
    pub tx_aperture_m: f64,
    /// Receiver aperture diameter, m. Default 1.0.
    #[serde(default = "d_rx_aperture_m")]
    pub rx_aperture_m: f64,
    /// RMS pointing jitter per axis, µrad. Default 0.5.
    #[serde(default = "d_pointing_sigma_urad")]
    pub pointing_sigma_urad: f64,
    /// Fixed excess loss per downlink arm, dB. Default 0.
    #[serde(default)]
    pub excess_loss_db: f64,
    /// `calibrated-default` or a path to a zenith-transmittance CSV
    /// (relative paths resolve against the config file's directory).
    #[serde(default = "d_atmosphere")]
    pub atmosphere: String,
    /// Pair-source repetition rate, Hz. Default 1e7.
    #[serde(default = "d_source_rate_hz")]
    pub source_rate_hz: f64,
    /// Source heralding efficiency. Default 0.9.
    #[serde(default = "d_eta")]
    pub eta_source: f64,
    /// Non-destructive photon-detector efficiency. Default 0.9.
    #[serde(default = "d_eta")]
    pub eta_qnd: f64,
    /// Memory write efficiency. Default 0.9.
    #[serde(default = "d_eta")]
    pub eta_mem_write: f64,
    /// Memory read efficiency. Default 0.9.
    #[serde(default = "d_eta")]
    pub eta_mem_read: f64,
    /// Detector efficiency at the swapping stations. Default 0.9.
    #[serde(default = "d_eta")]
    pub eta_detector: f64,
    /// Sky background preset: `day` (default), `night`, or `none`.
    #[serde(default = "d_background")]
    pub background: BackgroundEnvironment,
    /// Receiver field of view, µrad. Default 10.
    #[serde(default = "d_fov_urad")]
    pub fov_urad: f64,
    /// Coincidence filter bandwidth, Hz. Default: the source rate.
    #[serde(default)]
    pub filter_bandwidth_hz: Option<f64>,
    /// Geometry sampling step, s. Default 10.
    #[serde(default = "d_step_s")]
    pub step_s: f64,
    /// Operational elevation cutoff, degrees. Default 10.
    #[serde(default = "d_min_elevation_deg")]
    pub min_elevation_deg: f64,
    /// Count background falses at both stations (default) or only one.
    #[serde(default = "d_true")]
    pub noise_both_stations: bool,
}

/// Read and parse a scenario file.
///
/// # Errors
///
/// [`CliError::Usage`] on IO failure or parse failure (the TOML error
/// carries the offending key and line).
pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::usage(format!("invalid config {}: {e}", path.display())))
}

/// Expand presets and units into a resolved scenario.
///
/// `base_dir` anchors relative atmosphere paths; `background_override`
/// replaces the file's sky preset when given (the CLI `--background` flag).
///
/// # Errors
///
/// [`CliError::Usage`] for contradictory or missing fields and unreadable
/// atmosphere tables.
pub fn resolve(
    cfg: &ConfigFile,
    base_dir: &Path,
    background_override: Option<BackgroundEnvironment>,
) -> Result<Scenario, CliError> {
    let orbit = match cfg.mode {
        Mode::Fiber => {
            if cfg.altitude_km.is_some() || cfg.geostationary {
                return Err(CliError::usage(
                    "fiber mode takes no altitude_km or geostationary",
                ));
            }
            None
        }
        Mode::Repeater | Mode::Direct => Some(resolve_orbit(cfg)?),
    };

    let atmosphere = resolve_atmosphere(&cfg.atmosphere, base_dir)?;

    let scenario = Scenario {
        mode: cfg.mode,
        ground_distance_m: cfg.ground_distance_km * 1e3,
        orbit,
        nesting: cfg.nesting,
        channel: OpticalChannel {
            // Divide by the exact powers of ten: multiplying by the inexact
            // 1e-9/1e-6 doubles lands 1 ulp off the equivalent literal.
            wavelength_m: cfg.wavelength_nm / 1e9,
            tx_aperture_m: cfg.tx_aperture_m,
            rx_aperture_m: cfg.rx_aperture_m,
            pointing_sigma_rad: cfg.pointing_sigma_urad / 1e6,
            excess_loss_db: cfg.excess_loss_db,
        },
        atmosphere,
        source_rate_hz: cfg.source_rate_hz,
        efficiencies: Efficiencies {
            source: cfg.eta_source,
            qnd: cfg.eta_qnd,
            mem_write: cfg.eta_mem_write,
            mem_read: cfg.eta_mem_read,
            detector: cfg.eta_detector,
        },
        background: background_override.unwrap_or(cfg.background),
        fov_rad: cfg.fov_urad / 1e6,
        filter_bandwidth_hz: cfg.filter_bandwidth_hz.unwrap_or(cfg.source_rate_hz),
        step_s: cfg.step_s,
        min_elevation_rad: cfg.min_elevation_deg.to_radians(),
        coincidence: CoincidenceModel {
            both_stations: cfg.noise_both_stations,
        },
    };
    scenario.validate().map_err(CliError::from)?;
    Ok(scenario)
}

fn resolve_orbit(cfg: &ConfigFile) -> Result<OrbitSpec, CliError> {
    if cfg.geostationary {
        if cfg.altitude_km.is_some() {
            return Err(CliError::usage(
                "altitude_km and geostationary = true are mutually exclusive",
            ));
        }
        if cfg.direction == Some(OrbitDirection::CounterRotating) {
            return Err(CliError::usage(
                "a geostationary orbit cannot be counter-rotating",
            ));
        }
        return Ok(OrbitSpec {
            altitude_m: geostationary_altitude_m(),
            direction: OrbitDirection::CoRotating,
        });
    }
    match cfg.altitude_km {
        Some(km) if km > 0.0 => Ok(OrbitSpec {
            altitude_m: km * 1e3,
            direction: cfg.direction.unwrap_or(OrbitDirection::CounterRotating),
        }),
        Some(_) => Err(CliError::usage("altitude_km must be > 0")),
        None => Err(CliError::usage(
            "satellite modes need altitude_km (or geostationary = true)",
        )),
    }
}

fn resolve_atmosphere(spec: &str, base_dir: &Path) -> Result<AtmosphereTable, CliError> {
    if spec == "calibrated-default" {
        return Ok(AtmosphereTable::calibrated_default());
    }
    let path = {
        let p = Path::new(spec);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            base_dir.join(p)
        }
    };
    let text = std::fs::read_to_string(&path).map_err(|e| {
        CliError::usage(format!(
            "cannot read atmosphere table {}: {e}",
            path.display()
        ))
    })?;
    AtmosphereTable::from_csv_str(path.display().to_string(), &text).map_err(CliError::from)
}

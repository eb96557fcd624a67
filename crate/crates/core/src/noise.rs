//! Background-photon noise and false-coincidence error fractions.
//!
//! Sky background (scattered sunlight by day, starlight and airglow by
//! night) enters the receiver within its field of view and spectral filter
//! and masquerades as signal. Background rates scale from a measured
//! reference as
//!
//! ```text
//! R_noise = R_ref · (D_rx/D_ref)² · (Δν/Δν_ref) · (FoV/FoV_ref)²
//! ```
//!
//! — collecting area, filter bandwidth, and solid angle. The presets wrap
//! two standard observing conditions for a 1 m telescope:
//!
//! - **day**: 100 counts/s referenced to a 10 MHz filter and 10 µrad FoV;
//! - **night**: 100 counts/s referenced to a 1 nm filter (converted to Hz
//!   at the channel wavelength) and 50 µrad FoV.
//!
//! A background count that lands in the same coincidence window as a
//! genuine single-photon detection fakes a pair event. With per-slot
//! probabilities `P_noise` (background in the window), `P_signal` (one real
//! photon arrives) and `P_pair` (both real photons arrive), the fraction of
//! recorded coincidences that are false is
//!
//! ```text
//! err = m·P_noise·P_signal / (m·P_noise·P_signal + P_pair)
//! ```
//!
//! with `m = 2` when both stations contribute background (either side can
//! supply the fake partner) and `m = 1` for a single noisy station. The
//! caller must evaluate `P_signal` and `P_pair` at the *same instant* —
//! profiles expose exactly that pair of numbers.

use crate::constants::SPEED_OF_LIGHT_M_S;
use serde::{Deserialize, Serialize};

/// A measured background-rate reference configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BackgroundReference {
    /// Background count rate in the reference configuration, 1/s.
    pub rate_hz: f64,
    /// Reference receive-aperture diameter, m.
    pub rx_aperture_m: f64,
    /// Reference filter bandwidth, Hz.
    pub filter_bandwidth_hz: f64,
    /// Reference (full) field of view, rad.
    pub fov_rad: f64,
}

/// Sky condition presets (plus "none" for noise-free idealization).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackgroundEnvironment {
    /// Clear daytime sky.
    Day,
    /// Clear moonless night sky.
    Night,
    /// No background at all.
    None,
}

impl BackgroundEnvironment {
    /// The measured reference this preset scales from, or `None` for the
    /// noise-free case. The night preset's 1 nm filter is converted to Hz
    /// at the channel wavelength, hence the argument.
    pub fn reference(&self, wavelength_m: f64) -> Option<BackgroundReference> {
        match self {
            BackgroundEnvironment::Day => Some(BackgroundReference {
                rate_hz: 100.0,
                rx_aperture_m: 1.0,
                filter_bandwidth_hz: 10e6,
                fov_rad: 10e-6,
            }),
            BackgroundEnvironment::Night => Some(BackgroundReference {
                rate_hz: 100.0,
                rx_aperture_m: 1.0,
                filter_bandwidth_hz: wavelength_bw_to_hz(1e-9, wavelength_m),
                fov_rad: 50e-6,
            }),
            BackgroundEnvironment::None => None,
        }
    }
}

/// Convert a filter bandwidth quoted in wavelength (`Δλ` around `λ`) to
/// frequency: `Δν = c·Δλ/λ²`.
pub fn wavelength_bw_to_hz(delta_lambda_m: f64, wavelength_m: f64) -> f64 {
    SPEED_OF_LIGHT_M_S * delta_lambda_m / (wavelength_m * wavelength_m)
}

/// Scale a reference background rate to this receiver's aperture, filter
/// and field of view.
pub fn background_rate_hz(
    reference: &BackgroundReference,
    rx_aperture_m: f64,
    filter_bandwidth_hz: f64,
    fov_rad: f64,
) -> f64 {
    let area = (rx_aperture_m / reference.rx_aperture_m).powi(2);
    let bandwidth = filter_bandwidth_hz / reference.filter_bandwidth_hz;
    let solid_angle = (fov_rad / reference.fov_rad).powi(2);
    reference.rate_hz * area * bandwidth * solid_angle
}

/// How false coincidences are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceModel {
    /// Both stations see background (`m = 2` in the error formula); set
    /// false for a single noisy station (`m = 1`).
    pub both_stations: bool,
}

impl Default for CoincidenceModel {
    fn default() -> Self {
        Self {
            both_stations: true,
        }
    }
}

/// Fraction of recorded coincidences that are background-induced fakes.
///
/// `p_noise` is the per-slot background probability `R_noise/R_s`;
/// `p_signal` and `p_pair` are the single-photon and pair transmission
/// probabilities *at the same instant*. Degenerate cases: no fake source
/// (`p_noise·p_signal = 0`) gives 0 even when `p_pair = 0`; fakes with no
/// genuine pairs give 1.
pub fn false_coincidence_error_fraction(
    model: CoincidenceModel,
    p_noise: f64,
    p_signal: f64,
    p_pair: f64,
) -> f64 {
    let m = if model.both_stations { 2.0 } else { 1.0 };
    let fakes = m * p_noise * p_signal;
    if fakes == 0.0 {
        return 0.0;
    }
    fakes / (fakes + p_pair)
}

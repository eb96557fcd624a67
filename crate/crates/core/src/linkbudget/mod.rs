//! Optical downlink efficiency: diffraction, pointing jitter, atmosphere.
//!
//! The transmission efficiency of one satellite-to-ground arm factorizes as
//!
//! ```text
//! η⁽¹⁾ = S(X, Σ) · T_zenith(λ)^airmass · 10^(−excess_dB/10)
//! ```
//!
//! where `S` is the fraction of the transmitted power collected by the
//! receiving telescope after far-field diffraction over the transmit
//! aperture *and* Gaussian pointing jitter ([`pointing`]), and the
//! atmospheric factor raises the zenith transmittance to the slant airmass
//! ([`atmosphere`]). Both photons of an entangled pair must arrive, so the
//! two-photon (pair) efficiency of an elementary link is the product of its
//! two arms, `η⁽²⁾ = η_A·η_B`; [`profile`] integrates that over a satellite
//! pass.
//!
//! Everything is controlled by two dimensionless groups:
//!
//! - `X = π·D_tx·r_rx/(λ·d)` — the receiver radius in units of the
//!   diffraction-limited Airy scale at slant range `d`,
//! - `Σ = π·D_tx·σ/(λ)` — the RMS pointing jitter in the same units
//!   (independent of range, because jitter and diffraction both scale
//!   linearly with distance).

pub mod airy;
pub mod atmosphere;
pub mod pointing;
pub mod profile;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Static description of one optical downlink channel.
///
/// Apertures are *diameters*; the receiver radius used in the diffraction
/// parameter is `rx_aperture_m / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpticalChannel {
    /// Photon wavelength, m.
    pub wavelength_m: f64,
    /// Transmit telescope aperture diameter, m.
    pub tx_aperture_m: f64,
    /// Receive telescope aperture diameter, m.
    pub rx_aperture_m: f64,
    /// RMS transmitter pointing jitter (one-axis Gaussian), rad.
    pub pointing_sigma_rad: f64,
    /// Fixed excess system loss (optics, detectors' coupling, …), dB.
    pub excess_loss_db: f64,
}

impl OpticalChannel {
    /// Check the channel parameters are in their physical domain.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidParameter`] naming the offending field.
    pub fn validate(&self) -> Result<()> {
        if !self.wavelength_m.is_finite() || self.wavelength_m <= 0.0 {
            return Err(Error::invalid("wavelength_m must be finite and > 0"));
        }
        if !self.tx_aperture_m.is_finite() || self.tx_aperture_m <= 0.0 {
            return Err(Error::invalid("tx_aperture_m must be finite and > 0"));
        }
        if !self.rx_aperture_m.is_finite() || self.rx_aperture_m <= 0.0 {
            return Err(Error::invalid("rx_aperture_m must be finite and > 0"));
        }
        if !self.pointing_sigma_rad.is_finite() || self.pointing_sigma_rad < 0.0 {
            return Err(Error::invalid("pointing_sigma_rad must be finite and >= 0"));
        }
        if !self.excess_loss_db.is_finite() || self.excess_loss_db < 0.0 {
            return Err(Error::invalid("excess_loss_db must be finite and >= 0"));
        }
        Ok(())
    }

    /// Dimensionless receiver radius `X = π·D_tx·r_rx/(λ·d)` at slant
    /// range `slant_m`.
    pub fn separation_parameter(&self, slant_m: f64) -> f64 {
        pointing::separation_parameter(
            self.tx_aperture_m,
            self.rx_aperture_m,
            self.wavelength_m,
            slant_m,
        )
    }

    /// Dimensionless pointing jitter `Σ = π·D_tx·σ/λ` (range-independent).
    pub fn jitter_parameter(&self) -> f64 {
        pointing::jitter_parameter(
            self.tx_aperture_m,
            self.pointing_sigma_rad,
            self.wavelength_m,
        )
    }

    /// Multiplicative excess-loss factor `10^(−excess_dB/10)`.
    pub fn excess_factor(&self) -> f64 {
        10f64.powf(-self.excess_loss_db / 10.0)
    }
}

//! Two-photon transmission profiles over a satellite pass, plus the fiber
//! baseline.
//!
//! An entangled-pair source on the satellite sends one photon to each
//! ground station, so the pair transmission at any instant is the product
//! of the two single-arm efficiencies, `η⁽²⁾(t) = η_A(t)·η_B(t)`. The rate
//! models need a handful of aggregates of `η⁽²⁾` over a mutual-visibility
//! window:
//!
//! - `P0_avg = (1/T_FB)·∫ η⁽²⁾ dt` — flyby-averaged pair transmission, the
//!   per-shot success probability the analytic rate formula uses;
//! - `η⁽²⁾_peak` and the loss `−10·log₁₀(η⁽²⁾_peak)` in dB at the best
//!   instant of the pass;
//! - `η⁽¹⁾` at that same instant (the stronger arm) — used by the
//!   false-coincidence noise model, which compares single-photon and pair
//!   detection at one instant;
//! - `η⁽¹⁾_max` over the window (the stronger arm's best moment) — used to
//!   size multimode memories, since the memory must keep up with the
//!   highest heralding throughput of the pass.
//!
//! All windows of a circular equatorial pass are congruent, so the first
//! (untruncated, by the phase convention of [`crate::orbital`]) window is
//! profiled and the per-day figures multiply by the window count. The
//! integral uses the trapezoid rule on the same fixed grid the window was
//! found on. A geostationary satellite is a degenerate "pass" spanning the
//! whole horizon with a constant profile.

use crate::constants::FIBER_ATTENUATION_DB_PER_KM;
use crate::error::Result;
use crate::linkbudget::airy::ensure_far_field;
use crate::linkbudget::atmosphere::AtmosphereTable;
use crate::linkbudget::pointing::pointing_smeared_energy;
use crate::linkbudget::OpticalChannel;
use crate::orbital::{find_pass_windows, is_stationary, ArmGeometry, GroundLink};

/// Aggregates of the two-photon transmission over one representative
/// mutual-visibility window.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionProfile {
    /// Flyby duration `T_FB` of the representative window, s.
    pub t_fb_s: f64,
    /// Number of mutual-visibility windows in the sampled horizon
    /// (flybys per day for the default one-day horizon).
    pub flybys_per_day: usize,
    /// Flyby-averaged pair transmission `(1/T_FB)·∫ η⁽²⁾ dt`.
    pub p0_avg: f64,
    /// `∫ η⁽²⁾ dt` over the window, s.
    pub integral_eta2_s: f64,
    /// Peak pair transmission over the window.
    pub eta2_peak: f64,
    /// Stronger single-arm transmission at the pair peak's instant.
    pub eta1_at_peak: f64,
    /// Best single-arm transmission anywhere in the window.
    pub eta1_max: f64,
    /// Pair loss at the best instant, `−10·log₁₀(η⁽²⁾_peak)`, dB.
    pub peak_loss_db: f64,
    /// Pair transmission at each grid sample of the window (for stochastic
    /// models that want the time dependence rather than the average).
    pub eta2_samples: Vec<f64>,
    /// Grid step the window was sampled on, s.
    pub step_s: f64,
    /// True if any single-arm evaluation clamped the wavelength to the
    /// atmosphere table's range.
    pub wavelength_clamped: bool,
}

/// Single-arm downlink efficiency for one station at one instant.
///
/// `η⁽¹⁾ = S(X, Σ)·T_zenith^airmass·10^(−excess/10)`; the returned flag
/// reports wavelength clamping in the atmosphere lookup.
///
/// # Errors
///
/// [`crate::Error::FarFieldViolation`] if the slant range is inside the
/// transmit aperture's Fresnel distance;
/// [`crate::Error::QuadratureNotConverged`] if the pointing quadrature
/// self-check failed.
pub fn single_arm_efficiency(
    channel: &OpticalChannel,
    arm: &ArmGeometry,
    atmosphere: &AtmosphereTable,
    min_elevation_rad: f64,
) -> Result<(f64, bool)> {
    ensure_far_field(
        arm.slant_range_m,
        channel.tx_aperture_m,
        channel.wavelength_m,
    )?;
    let x = channel.separation_parameter(arm.slant_range_m);
    let s = pointing_smeared_energy(x, channel.jitter_parameter())?;
    let (t_atm, clamped) = atmosphere.transmittance(
        channel.wavelength_m * 1e9,
        arm.elevation_rad,
        min_elevation_rad,
    );
    Ok((s * t_atm * channel.excess_factor(), clamped))
}

/// Profile the two-photon transmission of an elementary link over its
/// representative pass window.
///
/// Returns `Ok(None)` when the link has no mutual-visibility window at all
/// (the stations are too far apart for the orbit); callers decide whether
/// that is an error or a zero-rate data point.
///
/// # Errors
///
/// Propagates [`single_arm_efficiency`] failures. The far-field guard binds
/// at the *shortest* slant range of the pass, so a violation means the
/// whole geometry is outside the model's domain.
pub fn two_photon_profile(
    link: &GroundLink,
    channel: &OpticalChannel,
    atmosphere: &AtmosphereTable,
    step_s: f64,
    horizon_s: f64,
) -> Result<Option<TransmissionProfile>> {
    channel.validate()?;
    let windows = find_pass_windows(link, step_s, horizon_s);
    let Some(first) = windows.first().copied() else {
        return Ok(None);
    };

    if is_stationary(&link.orbit) {
        // Time-independent geometry: one sample describes the whole day.
        let sample = link.sample(link.phase0_rad(), 0.0);
        let (eta_a, cl_a) =
            single_arm_efficiency(channel, &sample.arm_a, atmosphere, link.min_elevation_rad)?;
        let (eta_b, cl_b) =
            single_arm_efficiency(channel, &sample.arm_b, atmosphere, link.min_elevation_rad)?;
        let eta2 = eta_a * eta_b;
        let t_fb = first.duration_s();
        return Ok(Some(TransmissionProfile {
            t_fb_s: t_fb,
            flybys_per_day: windows.len(),
            p0_avg: eta2,
            integral_eta2_s: eta2 * t_fb,
            eta2_peak: eta2,
            eta1_at_peak: eta_a.max(eta_b),
            eta1_max: eta_a.max(eta_b),
            peak_loss_db: -10.0 * eta2.log10(),
            eta2_samples: vec![eta2],
            step_s,
            wavelength_clamped: cl_a || cl_b,
        }));
    }

    let n_samples = ((first.end_s - first.start_s) / step_s).round() as usize + 1;
    let mut eta2 = Vec::with_capacity(n_samples);
    let mut eta1_max = 0.0f64;
    let mut clamped = false;
    let mut eta1_strong = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let t = first.start_s + i as f64 * step_s;
        let sample = link.sample_at(t);
        let (eta_a, cl_a) =
            single_arm_efficiency(channel, &sample.arm_a, atmosphere, link.min_elevation_rad)?;
        let (eta_b, cl_b) =
            single_arm_efficiency(channel, &sample.arm_b, atmosphere, link.min_elevation_rad)?;
        clamped |= cl_a || cl_b;
        let strong = eta_a.max(eta_b);
        eta1_max = eta1_max.max(strong);
        eta1_strong.push(strong);
        eta2.push(eta_a * eta_b);
    }

    let integral = trapezoid(&eta2, step_s);
    let t_fb = first.duration_s();
    let (peak_idx, &eta2_peak) = eta2
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("window has at least two samples");

    Ok(Some(TransmissionProfile {
        t_fb_s: t_fb,
        flybys_per_day: windows.len(),
        p0_avg: integral / t_fb,
        integral_eta2_s: integral,
        eta2_peak,
        eta1_at_peak: eta1_strong[peak_idx],
        eta1_max,
        peak_loss_db: -10.0 * eta2_peak.log10(),
        eta2_samples: eta2,
        step_s,
        wavelength_clamped: clamped,
    }))
}

/// Trapezoid rule on a uniform grid.
fn trapezoid(y: &[f64], dx: f64) -> f64 {
    if y.len() < 2 {
        return 0.0;
    }
    let sum: f64 = y.iter().sum();
    dx * (sum - 0.5 * (y[0] + y[y.len() - 1]))
}

/// End-to-end fiber attenuation at the standard 0.15 dB/km, in dB.
///
/// Computed directly in dB so round-number distances stay exact
/// (2000 km → exactly 300 dB).
pub fn fiber_loss_db(distance_km: f64) -> f64 {
    FIBER_ATTENUATION_DB_PER_KM * distance_km
}

/// Fraction of photons surviving `distance_km` of standard fiber.
pub fn fiber_transmission_fraction(distance_km: f64) -> f64 {
    10f64.powf(-fiber_loss_db(distance_km) / 10.0)
}

//! Scenario evaluation: one operating point in, one result row out.
//!
//! A [`Scenario`] fixes everything about an operating point — mode,
//! geometry, optics, atmosphere, devices, background — and [`evaluate`]
//! runs the full orbital → link-budget → rate → noise pipeline:
//!
//! - **repeater**: the total distance is split into `2ⁿ` elementary links,
//!   the representative pass of one elementary link is profiled, and the
//!   nested-chain formulas of [`crate::repeater`] produce the rate and the
//!   memory requirements. With [`Nesting::Auto`] both benchmark depths
//!   `n ∈ {2, 3}` are evaluated and the faster one is reported.
//! - **direct**: a single satellite downlink spanning the full distance;
//!   the rate is `R_s·∫η⁽²⁾dt` per pass with no repeater hardware factors.
//! - **fiber**: no satellite at all; attenuation at the standard 0.15 dB/km
//!   applied to the full distance.
//!
//! Geometries with no mutual visibility are *data*, not errors: they
//! produce a zero-rate row with the `no_mutual_visibility` flag set, so
//! sweeps can cross the visibility edge and plot the cliff.

use crate::error::{Error, Result};
use crate::linkbudget::atmosphere::AtmosphereTable;
use crate::linkbudget::profile::{
    fiber_loss_db, fiber_transmission_fraction, two_photon_profile, TransmissionProfile,
};
use crate::linkbudget::OpticalChannel;
use crate::noise::{
    background_rate_hz, false_coincidence_error_fraction, BackgroundEnvironment, CoincidenceModel,
};
use crate::orbital::{GroundLink, OrbitSpec};
use crate::repeater::{
    modes_required, p_entanglement_generation, p_entanglement_swap, pairs_per_day, pairs_per_flyby,
    storage_time_s, ChainConfig, Efficiencies,
};
use serde::{Deserialize, Serialize};

/// Which distribution scheme a scenario models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Nested repeater chain over satellite elementary links.
    Repeater,
    /// One satellite downlink spanning the full distance.
    Direct,
    /// Optical fiber on the ground.
    Fiber,
}

impl Mode {
    /// Stable lowercase name used in CSV rows and config files.
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Repeater => "repeater",
            Mode::Direct => "direct",
            Mode::Fiber => "fiber",
        }
    }
}

/// Repeater nesting depth: fixed, or chosen per point from the benchmark
/// candidates `{2, 3}` by best pairs-per-day.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nesting {
    /// Evaluate `n ∈ {2, 3}` and keep the faster.
    Auto,
    /// Evaluate exactly this depth.
    Fixed(u32),
}

/// Candidate depths tried by [`Nesting::Auto`].
pub const AUTO_NESTING_CANDIDATES: [u32; 2] = [2, 3];

impl Serialize for Nesting {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Nesting::Auto => ser.serialize_str("auto"),
            Nesting::Fixed(n) => ser.serialize_u32(*n),
        }
    }
}

impl<'de> Deserialize<'de> for Nesting {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(u32),
            Str(String),
        }
        match Repr::deserialize(de)? {
            Repr::Int(n) => Ok(Nesting::Fixed(n)),
            Repr::Str(s) if s == "auto" => Ok(Nesting::Auto),
            Repr::Str(s) => Err(serde::de::Error::custom(format!(
                "nesting must be an integer or \"auto\", got \"{s}\""
            ))),
        }
    }
}

/// A fully resolved operating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    /// Distribution scheme.
    pub mode: Mode,
    /// Total ground distance between the end stations, m.
    pub ground_distance_m: f64,
    /// Satellite orbit (`None` for fiber).
    pub orbit: Option<OrbitSpec>,
    /// Repeater nesting depth policy (ignored outside repeater mode).
    pub nesting: Nesting,
    /// Optical downlink channel.
    pub channel: OpticalChannel,
    /// Zenith-transmittance table.
    pub atmosphere: AtmosphereTable,
    /// Entangled-pair source repetition rate `R_s`, Hz.
    pub source_rate_hz: f64,
    /// Repeater device efficiencies.
    pub efficiencies: Efficiencies,
    /// Sky background preset.
    pub background: BackgroundEnvironment,
    /// Receiver (full) field of view, rad.
    pub fov_rad: f64,
    /// Coincidence filter bandwidth, Hz.
    pub filter_bandwidth_hz: f64,
    /// Geometry sampling step, s.
    pub step_s: f64,
    /// Operational elevation cutoff, rad.
    pub min_elevation_rad: f64,
    /// False-coincidence counting convention.
    pub coincidence: CoincidenceModel,
}

impl Scenario {
    /// Validate cross-field consistency.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidParameter`] naming the problem.
    pub fn validate(&self) -> Result<()> {
        self.channel.validate()?;
        self.efficiencies.validate()?;
        if !self.ground_distance_m.is_finite() || self.ground_distance_m < 0.0 {
            return Err(Error::invalid("ground_distance_m must be finite and >= 0"));
        }
        if !self.source_rate_hz.is_finite() || self.source_rate_hz <= 0.0 {
            return Err(Error::invalid("source_rate_hz must be finite and > 0"));
        }
        if !self.step_s.is_finite() || self.step_s <= 0.0 {
            return Err(Error::invalid("step_s must be finite and > 0"));
        }
        if !self.fov_rad.is_finite() || self.fov_rad <= 0.0 {
            return Err(Error::invalid("fov_urad must be finite and > 0"));
        }
        if !self.filter_bandwidth_hz.is_finite() || self.filter_bandwidth_hz <= 0.0 {
            return Err(Error::invalid("filter_bandwidth_hz must be finite and > 0"));
        }
        if !(self.min_elevation_rad > 0.0 && self.min_elevation_rad < std::f64::consts::FRAC_PI_2) {
            return Err(Error::invalid(
                "min_elevation_deg must be in (0, 90) degrees",
            ));
        }
        match self.mode {
            Mode::Fiber => {}
            Mode::Repeater | Mode::Direct => {
                if self.orbit.is_none() {
                    return Err(Error::invalid(
                        "satellite modes need altitude_km (or geostationary = true)",
                    ));
                }
                if let Nesting::Fixed(n) = self.nesting {
                    if n > 10 {
                        return Err(Error::invalid("nesting deeper than 10 is not supported"));
                    }
                }
            }
        }
        Ok(())
    }

    fn link(&self, elementary_length_m: f64) -> Result<GroundLink> {
        let orbit = self
            .orbit
            .ok_or_else(|| Error::invalid("satellite modes need an orbit"))?;
        Ok(GroundLink {
            orbit,
            ground_distance_m: elementary_length_m,
            min_elevation_rad: self.min_elevation_rad,
        })
    }

    /// Per-slot background probability `R_noise/R_s` under this scenario's
    /// receiver, filter and sky preset (0 for the noise-free preset).
    pub fn noise_probability_per_slot(&self) -> f64 {
        match self.background.reference(self.channel.wavelength_m) {
            Some(reference) => {
                background_rate_hz(
                    &reference,
                    self.channel.rx_aperture_m,
                    self.filter_bandwidth_hz,
                    self.fov_rad,
                ) / self.source_rate_hz
            }
            None => 0.0,
        }
    }
}

/// Diagnostic flags accompanying a result row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResultFlags {
    /// The geometry never had both stations seeing the satellite; the row
    /// is a structural zero, not a small number.
    pub no_mutual_visibility: bool,
    /// The channel wavelength fell outside the atmosphere table and was
    /// clamped to its nearest entry.
    pub wavelength_clamped: bool,
    /// The nesting depth picked by [`Nesting::Auto`], when it ran.
    pub auto_nesting_chosen: Option<u32>,
}

/// One evaluated operating point, in the units of the CSV schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    /// Distribution scheme of this row.
    pub mode: Mode,
    /// Total ground distance, km.
    pub distance_km: f64,
    /// Satellite altitude, km (0 for fiber).
    pub altitude_km: f64,
    /// Number of elementary links (`2ⁿ`; 1 for direct and fiber).
    pub n_links: u64,
    /// Flyby duration of the representative window, s.
    pub t_fb_s: f64,
    /// Mutual-visibility windows per day.
    pub flybys_per_day: usize,
    /// Flyby-averaged pair transmission of one elementary link (the fiber
    /// row reports the end-to-end fiber transmission here).
    pub p0_avg: f64,
    /// Per-shot entanglement-generation probability (repeater); equals
    /// `p0_avg` for direct/fiber where no repeater hardware is involved.
    pub p_eg: f64,
    /// Entanglement-swapping probability (1 where no swapping happens).
    pub p_es: f64,
    /// Pairs distributed per flyby.
    pub pairs_per_flyby: f64,
    /// Pairs distributed per day.
    pub pairs_per_day: f64,
    /// Multimode memory depth requirement (0 where no memory is used).
    pub n_mod: f64,
    /// Minimum memory storage time, ms (0 where no memory is used).
    pub storage_ms: f64,
    /// False-coincidence error fraction under the scenario's sky preset.
    pub noise_error_fraction: f64,
    /// Pair loss at the best instant of the pass, dB (0 on structural-zero
    /// rows, where no pass exists to measure).
    pub peak_loss_db: f64,
    /// Diagnostics (not part of the CSV schema; persisted in manifests).
    pub flags: ResultFlags,
}

/// Evaluate one scenario into one result row.
///
/// # Errors
///
/// [`Error::InvalidParameter`] for out-of-domain configs,
/// [`Error::FarFieldViolation`] for geometries inside the Fresnel distance,
/// [`Error::QuadratureNotConverged`] if the pointing quadrature self-check
/// fails. Missing visibility is not an error (see module docs).
pub fn evaluate(scenario: &Scenario) -> Result<PointResult> {
    scenario.validate()?;
    match scenario.mode {
        Mode::Fiber => Ok(evaluate_fiber(scenario)),
        Mode::Direct => evaluate_direct(scenario),
        Mode::Repeater => evaluate_repeater(scenario),
    }
}

fn evaluate_fiber(scenario: &Scenario) -> PointResult {
    let distance_km = scenario.ground_distance_m / 1e3;
    let fraction = fiber_transmission_fraction(distance_km);
    let per_day = scenario.source_rate_hz * crate::constants::SOLAR_DAY_S * fraction;
    PointResult {
        mode: Mode::Fiber,
        distance_km,
        altitude_km: 0.0,
        n_links: 1,
        t_fb_s: crate::constants::SOLAR_DAY_S,
        flybys_per_day: 1,
        p0_avg: fraction,
        p_eg: fraction,
        p_es: 1.0,
        pairs_per_flyby: per_day,
        pairs_per_day: per_day,
        n_mod: 0.0,
        storage_ms: 0.0,
        noise_error_fraction: 0.0,
        peak_loss_db: fiber_loss_db(distance_km),
        flags: ResultFlags::default(),
    }
}

fn evaluate_direct(scenario: &Scenario) -> Result<PointResult> {
    let link = scenario.link(scenario.ground_distance_m)?;
    let profile = two_photon_profile(
        &link,
        &scenario.channel,
        &scenario.atmosphere,
        scenario.step_s,
        crate::constants::SOLAR_DAY_S,
    )?;
    let altitude_km = link.orbit.altitude_m / 1e3;
    let distance_km = scenario.ground_distance_m / 1e3;

    let Some(profile) = profile else {
        return Ok(zero_row(
            scenario,
            distance_km,
            altitude_km,
            1,
            1.0,
            0.0,
            0.0,
        ));
    };

    let ppf = scenario.source_rate_hz * profile.integral_eta2_s;
    let ppd = pairs_per_day(ppf, profile.flybys_per_day);
    let p_noise = scenario.noise_probability_per_slot();
    let err = false_coincidence_error_fraction(
        scenario.coincidence,
        p_noise,
        profile.eta1_at_peak,
        profile.eta2_peak,
    );
    Ok(PointResult {
        mode: Mode::Direct,
        distance_km,
        altitude_km,
        n_links: 1,
        t_fb_s: profile.t_fb_s,
        flybys_per_day: profile.flybys_per_day,
        p0_avg: profile.p0_avg,
        p_eg: profile.p0_avg,
        p_es: 1.0,
        pairs_per_flyby: ppf,
        pairs_per_day: ppd,
        n_mod: 0.0,
        storage_ms: 0.0,
        noise_error_fraction: err,
        peak_loss_db: profile.peak_loss_db,
        flags: ResultFlags {
            no_mutual_visibility: false,
            wavelength_clamped: profile.wavelength_clamped,
            auto_nesting_chosen: None,
        },
    })
}

struct RepeaterCandidate {
    n: u32,
    profile: Option<TransmissionProfile>,
    ppd: f64,
}

fn evaluate_repeater(scenario: &Scenario) -> Result<PointResult> {
    let (candidates, auto) = match scenario.nesting {
        Nesting::Auto => (AUTO_NESTING_CANDIDATES.to_vec(), true),
        Nesting::Fixed(n) => (vec![n], false),
    };

    let mut evaluated = Vec::with_capacity(candidates.len());
    for n in candidates {
        let cfg = ChainConfig {
            nesting_n: n,
            source_rate_hz: scenario.source_rate_hz,
            efficiencies: scenario.efficiencies,
        };
        let link = scenario.link(cfg.elementary_length_m(scenario.ground_distance_m))?;
        let profile = two_photon_profile(
            &link,
            &scenario.channel,
            &scenario.atmosphere,
            scenario.step_s,
            crate::constants::SOLAR_DAY_S,
        )?;
        let ppd = profile
            .as_ref()
            .map(|p| pairs_per_day(pairs_per_flyby(&cfg, p.p0_avg, p.t_fb_s), p.flybys_per_day))
            .unwrap_or(0.0);
        evaluated.push(RepeaterCandidate { n, profile, ppd });
    }

    // Best visible candidate by pairs per day; ties and the all-invisible
    // case fall back to the deepest (shortest-link) candidate.
    let best = evaluated
        .iter()
        .filter(|c| c.profile.is_some())
        .max_by(|a, b| a.ppd.total_cmp(&b.ppd))
        .unwrap_or_else(|| evaluated.last().expect("at least one candidate"));

    let cfg = ChainConfig {
        nesting_n: best.n,
        source_rate_hz: scenario.source_rate_hz,
        efficiencies: scenario.efficiencies,
    };
    let altitude_km = scenario.orbit.expect("validated satellite mode").altitude_m / 1e3;
    let distance_km = scenario.ground_distance_m / 1e3;
    let auto_chosen = auto.then_some(best.n);

    let Some(profile) = &best.profile else {
        let mut row = zero_row(
            scenario,
            distance_km,
            altitude_km,
            cfg.n_links(),
            p_entanglement_swap(&scenario.efficiencies),
            storage_time_s(scenario.ground_distance_m) * 1e3,
            0.0,
        );
        row.flags.auto_nesting_chosen = auto_chosen;
        return Ok(row);
    };

    let p_eg = p_entanglement_generation(&scenario.efficiencies, profile.p0_avg);
    let p_es = p_entanglement_swap(&scenario.efficiencies);
    let ppf = pairs_per_flyby(&cfg, profile.p0_avg, profile.t_fb_s);
    let p_noise = scenario.noise_probability_per_slot();
    let err = false_coincidence_error_fraction(
        scenario.coincidence,
        p_noise,
        profile.eta1_at_peak,
        profile.eta2_peak,
    );

    Ok(PointResult {
        mode: Mode::Repeater,
        distance_km,
        altitude_km,
        n_links: cfg.n_links(),
        t_fb_s: profile.t_fb_s,
        flybys_per_day: profile.flybys_per_day,
        p0_avg: profile.p0_avg,
        p_eg,
        p_es,
        pairs_per_flyby: ppf,
        pairs_per_day: pairs_per_day(ppf, profile.flybys_per_day),
        n_mod: modes_required(
            &cfg,
            profile.eta1_max,
            cfg.elementary_length_m(scenario.ground_distance_m),
        ),
        storage_ms: storage_time_s(scenario.ground_distance_m) * 1e3,
        noise_error_fraction: err,
        peak_loss_db: profile.peak_loss_db,
        flags: ResultFlags {
            no_mutual_visibility: false,
            wavelength_clamped: profile.wavelength_clamped,
            auto_nesting_chosen: auto_chosen,
        },
    })
}

/// A structural-zero row for geometries with no mutual visibility.
fn zero_row(
    scenario: &Scenario,
    distance_km: f64,
    altitude_km: f64,
    n_links: u64,
    p_es: f64,
    storage_ms: f64,
    n_mod: f64,
) -> PointResult {
    PointResult {
        mode: scenario.mode,
        distance_km,
        altitude_km,
        n_links,
        t_fb_s: 0.0,
        flybys_per_day: 0,
        p0_avg: 0.0,
        p_eg: 0.0,
        p_es,
        pairs_per_flyby: 0.0,
        pairs_per_day: 0.0,
        n_mod,
        storage_ms,
        noise_error_fraction: 0.0,
        peak_loss_db: 0.0,
        flags: ResultFlags {
            no_mutual_visibility: true,
            wavelength_clamped: false,
            auto_nesting_chosen: None,
        },
    }
}

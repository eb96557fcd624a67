//! Rate models for entanglement distribution over satellite optical links.
//!
//! `satrep-core` computes how many entangled photon pairs per day a chain of
//! quantum repeaters can distribute between two distant ground stations when
//! the elementary links are closed by satellite-to-ground optical downlinks,
//! and compares that against two baselines: direct transmission through a
//! single (possibly geostationary) satellite, and direct transmission through
//! optical fiber.
//!
//! The pipeline is organized in layers, each usable on its own:
//!
//! - [`orbital`] — circular equatorial orbit kinematics: periods, synodic
//!   rates, elevation/slant-range geometry, and mutual-visibility pass
//!   windows for a pair of ground stations.
//! - [`linkbudget`] — optical downlink efficiency: diffraction over a
//!   circular aperture, Gaussian pointing jitter, atmospheric transmittance
//!   vs airmass, and excess system loss, integrated over a pass to yield a
//!   two-photon transmission profile.
//! - [`repeater`] — analytic rate formulas for a nested repeater chain:
//!   entanglement generation and swapping probabilities, pairs per flyby and
//!   per day, multimode memory requirements, and sensitivity exponents.
//! - [`noise`] — background-photon false-coincidence model with day/night
//!   sky presets.
//! - [`montecarlo`] — an independent stochastic check of the analytic rate
//!   via waiting-time sampling of the nested protocol, bit-reproducible for
//!   a given seed regardless of worker count.
//! - [`pipeline`] — scenario plumbing gluing the layers into a single
//!   `evaluate` call that produces one result row per operating point.
//!
//! All shared domain types are re-exported at the crate root so downstream
//! crates can write `satrep_core::Scenario` without caring about the module
//! layout.
//!
//! # Example
//!
//! Pairs per day for the benchmark repeater chain — eight elementary links
//! served from 1000 km altitude, end stations 20,000 km apart, daytime sky:
//!
//! ```
//! use satrep_core::{
//!     evaluate, AtmosphereTable, BackgroundEnvironment, CoincidenceModel, Efficiencies, Mode,
//!     Nesting, OpticalChannel, OrbitDirection, OrbitSpec, Scenario,
//! };
//!
//! let scenario = Scenario {
//!     mode: Mode::Repeater,
//!     ground_distance_m: 20_000e3,
//!     orbit: Some(OrbitSpec {
//!         altitude_m: 1000e3,
//!         direction: OrbitDirection::CounterRotating,
//!     }),
//!     nesting: Nesting::Fixed(3),
//!     channel: OpticalChannel {
//!         wavelength_m: 580e-9,
//!         tx_aperture_m: 0.5,
//!         rx_aperture_m: 1.0,
//!         pointing_sigma_rad: 0.5e-6,
//!         excess_loss_db: 0.0,
//!     },
//!     atmosphere: AtmosphereTable::calibrated_default(),
//!     source_rate_hz: 1e7,
//!     efficiencies: Efficiencies::default(),
//!     background: BackgroundEnvironment::Day,
//!     fov_rad: 10e-6,
//!     filter_bandwidth_hz: 1e7,
//!     step_s: 10.0,
//!     min_elevation_rad: 10f64.to_radians(),
//!     coincidence: CoincidenceModel::default(),
//! };
//!
//! let row = evaluate(&scenario)?;
//! assert_eq!(row.n_links, 8);
//! assert!(row.pairs_per_day > 2000.0 && row.pairs_per_day < 3000.0);
//! # Ok::<(), satrep_core::Error>(())
//! ```

pub mod constants;
pub mod error;
pub mod linkbudget;
pub mod montecarlo;
pub mod noise;
pub mod orbital;
pub mod pipeline;
pub mod repeater;

pub use error::{Error, Result};
pub use linkbudget::{
    airy::{encircled_energy, ensure_far_field, fresnel_distance_m},
    atmosphere::{AtmosphereTable, CALIBRATED_TABLE_LABEL},
    pointing::{jitter_parameter, pointing_smeared_energy, separation_parameter},
    profile::{
        fiber_loss_db, fiber_transmission_fraction, two_photon_profile, TransmissionProfile,
    },
    OpticalChannel,
};
pub use montecarlo::{
    estimate_rate, expected_max_two_geometric, expected_waiting_slots, sample_chain_waiting_time,
    McConfig, McEstimate,
};
pub use noise::{
    background_rate_hz, false_coincidence_error_fraction, wavelength_bw_to_hz,
    BackgroundEnvironment, BackgroundReference, CoincidenceModel,
};
pub use orbital::{
    find_pass_windows, geostationary_altitude_m, max_mutual_visibility_distance_m,
    orbital_period_s, relative_angular_rate_rad_s, synodic_period, ArmGeometry, GeometrySample,
    GroundLink, OrbitDirection, OrbitSpec, PassWindow, SynodicPeriod,
};
pub use pipeline::{evaluate, Mode, Nesting, PointResult, ResultFlags, Scenario};
pub use repeater::{
    modes_required, p_entanglement_generation, p_entanglement_swap, pairs_per_day, pairs_per_flyby,
    rate_sensitivity, storage_time_s, ChainConfig, Efficiencies, SensitivitySlope,
};

//! Circular-orbit kinematics and ground-station visibility geometry.
//!
//! The model is deliberately minimal: a spherical Earth, a circular orbit in
//! the equatorial plane, and two ground stations placed symmetrically on the
//! equator about the midpoint of their great-circle separation. This is the
//! geometry in which a single satellite serves one *elementary link* — it
//! must be simultaneously visible from both stations above an elevation
//! cutoff for entangled-photon downlinks to run.
//!
//! Conventions used throughout:
//!
//! - Angles along the equator are central angles from the link midpoint, in
//!   radians; station A sits at `−L/(2R_e)`, station B at `+L/(2R_e)` for a
//!   ground distance `L`.
//! - The sub-satellite point moves at the *relative* (synodic) angular rate,
//!   i.e. the orbit's mean motion combined with Earth's sidereal rotation:
//!   `ω + ω_E` for a counter-rotating orbit, `ω − ω_E` for a co-rotating
//!   one. A co-rotating orbit whose mean motion matches `ω_E` is
//!   geostationary and reported as [`SynodicPeriod::Stationary`].
//! - For a station–satellite central angle `Δ` and orbit radius
//!   `r = R_e + h`, the slant range is
//!   `d = √(R_e² + r² − 2·R_e·r·cos Δ)` and the elevation satisfies
//!   `sin(el) = (r·cos Δ − R_e)/d`.
//! - Pass windows are found by sampling the geometry on a fixed time grid
//!   (default 10 s) and taking maximal runs of samples where *both* stations
//!   see the satellite at or above the cutoff. Runs containing a single
//!   sample are dropped as zero-duration artifacts of the grid.
//! - Moving satellites start at the link antipode (`phase0 = π`), so the
//!   first recorded pass is a full, untruncated crossing of the link
//!   midpoint; a stationary satellite is parked over the midpoint
//!   (`phase0 = 0`). With circular symmetry every pass of a moving
//!   satellite is congruent to the first, so downstream consumers profile
//!   one representative window and multiply by the pass count.

use crate::constants::{EARTH_GM_M3_S2, EARTH_RADIUS_M, EARTH_ROTATION_RATE_RAD_S, SOLAR_DAY_S};
use serde::{Deserialize, Serialize};

/// Relative tolerance on `|ω − ω_E|` below which a co-rotating orbit is
/// treated as perfectly geostationary.
const STATIONARY_RATE_TOL: f64 = 1e-9;

/// Sense of the orbit relative to Earth's rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitDirection {
    /// Orbit motion opposes Earth's rotation; ground-frame rate `ω + ω_E`.
    CounterRotating,
    /// Orbit motion follows Earth's rotation; ground-frame rate `ω − ω_E`.
    CoRotating,
}

/// A circular equatorial orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitSpec {
    /// Altitude above the (spherical) Earth surface, m.
    pub altitude_m: f64,
    /// Orbit sense relative to Earth's rotation.
    pub direction: OrbitDirection,
}

/// Synodic (ground-frame) revolution period of an orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SynodicPeriod {
    /// Period of one ground-track revolution, s.
    Finite(f64),
    /// The sub-satellite point does not move (geostationary orbit).
    Stationary,
}

/// One-arm geometry: a single ground station looking at the satellite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmGeometry {
    /// Station–satellite straight-line distance, m.
    pub slant_range_m: f64,
    /// Elevation of the satellite above the station's horizon, rad.
    /// Negative when the satellite is below the horizon.
    pub elevation_rad: f64,
}

/// Both arms of an elementary link at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometrySample {
    /// Sample time since epoch, s.
    pub t_s: f64,
    /// Geometry seen from station A (at `−L/(2R_e)`).
    pub arm_a: ArmGeometry,
    /// Geometry seen from station B (at `+L/(2R_e)`).
    pub arm_b: ArmGeometry,
}

impl GeometrySample {
    /// True when both stations see the satellite at or above `min_elevation`.
    pub fn mutually_visible(&self, min_elevation_rad: f64) -> bool {
        self.arm_a.elevation_rad >= min_elevation_rad
            && self.arm_b.elevation_rad >= min_elevation_rad
    }
}

/// A maximal interval of mutual visibility on the sampling grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PassWindow {
    /// Time of the first mutually visible sample, s.
    pub start_s: f64,
    /// Time of the last mutually visible sample, s.
    pub end_s: f64,
}

impl PassWindow {
    /// Flyby duration `T_FB` covered by this window, s.
    pub fn duration_s(&self) -> f64 {
        self.end_s - self.start_s
    }
}

/// An elementary link: one satellite serving two equatorial ground stations
/// separated by `ground_distance_m` along the great circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundLink {
    /// Orbit of the satellite serving the link.
    pub orbit: OrbitSpec,
    /// Great-circle distance between the two ground stations, m.
    pub ground_distance_m: f64,
    /// Elevation cutoff below which a station cannot operate, rad.
    pub min_elevation_rad: f64,
}

impl GroundLink {
    /// Central angles of the two stations about the link midpoint, rad.
    pub fn station_angles_rad(&self) -> (f64, f64) {
        let half = self.ground_distance_m / (2.0 * EARTH_RADIUS_M);
        (-half, half)
    }

    /// Initial sub-satellite central angle.
    ///
    /// Moving satellites start at the link antipode so the first pass is a
    /// complete midpoint crossing; a geostationary satellite is parked over
    /// the link midpoint (the only placement that serves the link at all).
    pub fn phase0_rad(&self) -> f64 {
        if is_stationary(&self.orbit) {
            0.0
        } else {
            std::f64::consts::PI
        }
    }

    /// Both-arm geometry with the sub-satellite point at central angle
    /// `subsat_rad`, stamped with time `t_s`.
    pub fn sample(&self, subsat_rad: f64, t_s: f64) -> GeometrySample {
        let (ang_a, ang_b) = self.station_angles_rad();
        GeometrySample {
            t_s,
            arm_a: elevation_and_range(self.orbit.altitude_m, subsat_rad - ang_a),
            arm_b: elevation_and_range(self.orbit.altitude_m, subsat_rad - ang_b),
        }
    }

    /// Geometry at time `t_s` under this link's phase convention.
    pub fn sample_at(&self, t_s: f64) -> GeometrySample {
        let rate = relative_angular_rate_rad_s(&self.orbit);
        let subsat = self.phase0_rad() - rate * t_s;
        self.sample(subsat, t_s)
    }
}

/// Keplerian orbital period `2π·√((R_e + h)³ / GM)` of a circular orbit, s.
pub fn orbital_period_s(altitude_m: f64) -> f64 {
    let r = EARTH_RADIUS_M + altitude_m;
    2.0 * std::f64::consts::PI * (r * r * r / EARTH_GM_M3_S2).sqrt()
}

/// Mean motion `ω = √(GM / (R_e + h)³)` of a circular orbit, rad/s.
pub fn mean_motion_rad_s(altitude_m: f64) -> f64 {
    let r = EARTH_RADIUS_M + altitude_m;
    (EARTH_GM_M3_S2 / (r * r * r)).sqrt()
}

/// Signed ground-frame angular rate of the sub-satellite point, rad/s.
///
/// Counter-rotating orbits beat against Earth's rotation (`ω + ω_E`);
/// co-rotating orbits drift at `ω − ω_E`, which vanishes at geostationary
/// altitude and turns negative above it.
pub fn relative_angular_rate_rad_s(orbit: &OrbitSpec) -> f64 {
    let omega = mean_motion_rad_s(orbit.altitude_m);
    match orbit.direction {
        OrbitDirection::CounterRotating => omega + EARTH_ROTATION_RATE_RAD_S,
        OrbitDirection::CoRotating => omega - EARTH_ROTATION_RATE_RAD_S,
    }
}

/// True when the orbit is geostationary for all practical purposes
/// (co-rotating with `|ω − ω_E| ≤ 10⁻⁹·ω_E`).
pub fn is_stationary(orbit: &OrbitSpec) -> bool {
    if orbit.direction != OrbitDirection::CoRotating {
        return false;
    }
    let omega = mean_motion_rad_s(orbit.altitude_m);
    (omega - EARTH_ROTATION_RATE_RAD_S).abs() <= STATIONARY_RATE_TOL * EARTH_ROTATION_RATE_RAD_S
}

/// Ground-frame revolution period of the sub-satellite point.
pub fn synodic_period(orbit: &OrbitSpec) -> SynodicPeriod {
    if is_stationary(orbit) {
        SynodicPeriod::Stationary
    } else {
        let rate = relative_angular_rate_rad_s(orbit).abs();
        SynodicPeriod::Finite(2.0 * std::f64::consts::PI / rate)
    }
}

/// Altitude at which a co-rotating circular orbit is geostationary, m.
///
/// Inverts Kepler's third law at Earth's sidereal rotation rate:
/// `r = (GM/ω_E²)^(1/3)`.
pub fn geostationary_altitude_m() -> f64 {
    let omega_e = EARTH_ROTATION_RATE_RAD_S;
    (EARTH_GM_M3_S2 / (omega_e * omega_e)).cbrt() - EARTH_RADIUS_M
}

/// Slant range and elevation for a station whose central-angle separation
/// from the sub-satellite point is `central_angle_rad`.
pub fn elevation_and_range(altitude_m: f64, central_angle_rad: f64) -> ArmGeometry {
    let r = EARTH_RADIUS_M + altitude_m;
    let cos_d = central_angle_rad.cos();
    let slant = (EARTH_RADIUS_M * EARTH_RADIUS_M + r * r - 2.0 * EARTH_RADIUS_M * r * cos_d).sqrt();
    let sin_el = ((r * cos_d - EARTH_RADIUS_M) / slant).clamp(-1.0, 1.0);
    ArmGeometry {
        slant_range_m: slant,
        elevation_rad: sin_el.asin(),
    }
}

/// Largest station separation (great-circle distance, m) at which both
/// stations can simultaneously see a satellite at altitude `altitude_m`
/// above elevation `min_elevation_rad`.
///
/// A single station sees the satellite up to a central angle
/// `Δ_max = arccos(cos(e)·R_e/(R_e+h)) − e`; the best case for two stations
/// is the satellite over the link midpoint, giving `L_max = 2·R_e·Δ_max`.
pub fn max_mutual_visibility_distance_m(altitude_m: f64, min_elevation_rad: f64) -> f64 {
    let r = EARTH_RADIUS_M + altitude_m;
    let e = min_elevation_rad;
    let delta_max = (e.cos() * EARTH_RADIUS_M / r).acos() - e;
    2.0 * EARTH_RADIUS_M * delta_max
}

/// Find all mutual-visibility windows on the sampling grid
/// `t = 0, step_s, 2·step_s, …` up to and including `horizon_s`.
///
/// Windows are maximal runs of consecutive mutually visible samples;
/// single-sample runs are dropped (their duration on the grid is zero).
/// For a geostationary satellite the geometry is time-independent: the
/// result is either one window spanning the whole horizon or no window.
///
/// The number of windows returned with the default one-day horizon is the
/// per-day flyby count used by the rate models.
pub fn find_pass_windows(link: &GroundLink, step_s: f64, horizon_s: f64) -> Vec<PassWindow> {
    assert!(step_s > 0.0, "sampling step must be positive");
    assert!(horizon_s >= step_s, "horizon must cover at least one step");

    if is_stationary(&link.orbit) {
        let sample = link.sample(link.phase0_rad(), 0.0);
        return if sample.mutually_visible(link.min_elevation_rad) {
            vec![PassWindow {
                start_s: 0.0,
                end_s: horizon_s,
            }]
        } else {
            Vec::new()
        };
    }

    let n_steps = (horizon_s / step_s).round() as usize;
    let mut windows = Vec::new();
    let mut run_start: Option<usize> = None;

    for i in 0..=n_steps {
        let t = i as f64 * step_s;
        let visible = link.sample_at(t).mutually_visible(link.min_elevation_rad);
        match (visible, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(start)) => {
                push_run(&mut windows, start, i - 1, step_s);
                run_start = None;
            }
            _ => {}
        }
    }
    if let Some(start) = run_start {
        push_run(&mut windows, start, n_steps, step_s);
    }
    windows
}

fn push_run(windows: &mut Vec<PassWindow>, start: usize, end: usize, step_s: f64) {
    // A single visible sample carries no duration on the grid; treat it as
    // grid noise rather than a flyby.
    if end > start {
        windows.push(PassWindow {
            start_s: start as f64 * step_s,
            end_s: end as f64 * step_s,
        });
    }
}

/// Number of flybys per solar day implied by a window list computed over a
/// one-day horizon.
pub fn flybys_per_day(windows: &[PassWindow]) -> usize {
    windows.len()
}

/// Default one-day sampling horizon, s.
pub fn default_horizon_s() -> f64 {
    SOLAR_DAY_S
}

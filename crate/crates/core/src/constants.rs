//! Physical and astronomical constants used throughout the crate.
//!
//! Values are chosen once here so every module (and every test oracle)
//! agrees on the same Earth model; changing the Earth radius by a few km
//! moves pass durations and slant ranges enough to matter at the tolerances
//! the test suite pins.

/// Mean Earth radius in meters (spherical Earth model).
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

/// Geocentric gravitational constant GM in m³/s² (WGS-84 value).
pub const EARTH_GM_M3_S2: f64 = 3.986_004_418e14;

/// Sidereal day in seconds — the period of Earth's rotation relative to the
/// stars, which is what satellite ground tracks beat against.
pub const SIDEREAL_DAY_S: f64 = 86_164.1;

/// Solar day in seconds; pass counts are reported per solar day.
pub const SOLAR_DAY_S: f64 = 86_400.0;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// First zero of the Bessel function J₁ (the Airy pattern's first null),
/// `j_{1,1}` ≈ 3.8317. The encircled energy of an unaberrated circular
/// aperture evaluated here is ≈ 0.838.
pub const FIRST_AIRY_NULL: f64 = 3.831_705_970_207_512;

/// Earth's sidereal rotation rate in rad/s.
pub const EARTH_ROTATION_RATE_RAD_S: f64 = 2.0 * std::f64::consts::PI / SIDEREAL_DAY_S;

/// Standard telecom-fiber attenuation at 1550 nm, dB/km.
pub const FIBER_ATTENUATION_DB_PER_KM: f64 = 0.15;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn earth_rotation_rate_matches_sidereal_day() {
        let period = 2.0 * std::f64::consts::PI / EARTH_ROTATION_RATE_RAD_S;
        assert!((period - SIDEREAL_DAY_S).abs() < 1e-9);
    }

    #[test]
    #[allow(clippy::assertions_on_constants)] // sanity-pinning the constants is the point
    fn constants_are_physically_sane() {
        assert!(EARTH_RADIUS_M > 6.3e6 && EARTH_RADIUS_M < 6.4e6);
        assert!(SIDEREAL_DAY_S < SOLAR_DAY_S);
        assert!(FIRST_AIRY_NULL > 3.8 && FIRST_AIRY_NULL < 3.9);
    }
}

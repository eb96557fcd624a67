//! Far-field (Airy) diffraction of a uniformly illuminated circular aperture.
//!
//! At distance `d` in the far field, the intensity pattern of a circular
//! aperture of diameter `D` is the Airy pattern. With the dimensionless
//! radial coordinate `x = π·D·ρ/(λ·d)` (ρ the physical radius in the
//! receiver plane), the fraction of the total power inside radius `x` has
//! the classical closed form
//!
//! ```text
//! E(x) = 1 − J₀²(x) − J₁²(x)
//! ```
//!
//! which evaluates to ≈ 0.838 at the first dark ring `x = j₁,₁ ≈ 3.8317`.
//!
//! The far-field form is only valid beyond the aperture's Fresnel distance
//! `D²/λ` (Fresnel number ≲ 1/4 with the radius convention); every
//! evaluation goes through [`ensure_far_field`] so a misconfigured geometry
//! fails loudly instead of silently returning a wrong pattern.

use crate::error::{Error, Result};

/// Fraction of an Airy pattern's power encircled within dimensionless
/// radius `x = π·D·ρ/(λ·d)`.
///
/// Monotonically increasing from 0 at `x = 0` towards 1, with plateaus at
/// the dark rings; `E(j₁,₁) ≈ 0.838`.
pub fn encircled_energy(x: f64) -> f64 {
    debug_assert!(x >= 0.0, "encircled energy needs x >= 0, got {x}");
    let j0 = libm::j0(x);
    let j1 = libm::j1(x);
    1.0 - j0 * j0 - j1 * j1
}

/// Fresnel distance `D²/λ` of a transmit aperture, m.
///
/// Beyond this range the Fresnel number `(D/2)²/(λ·d)` drops below 1/4 and
/// the far-field (Fraunhofer) pattern is an accurate description.
pub fn fresnel_distance_m(tx_aperture_m: f64, wavelength_m: f64) -> f64 {
    tx_aperture_m * tx_aperture_m / wavelength_m
}

/// Guard that a propagation geometry is in the transmitter's far field.
///
/// # Errors
///
/// [`Error::FarFieldViolation`] when `slant_m` is shorter than the Fresnel
/// distance `D²/λ`.
pub fn ensure_far_field(slant_m: f64, tx_aperture_m: f64, wavelength_m: f64) -> Result<()> {
    let fresnel = fresnel_distance_m(tx_aperture_m, wavelength_m);
    if slant_m < fresnel {
        return Err(Error::FarFieldViolation {
            slant_m,
            fresnel_distance_m: fresnel,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::FIRST_AIRY_NULL;
    use approx::assert_relative_eq;

    #[test]
    fn encircled_energy_at_first_null() {
        // 1 − J₀²(j₁,₁) − J₁²(j₁,₁) = 0.83778…, the textbook 83.8 % of the
        // power inside the first dark ring.
        assert_relative_eq!(
            encircled_energy(FIRST_AIRY_NULL),
            0.837_784_869_173_314_3,
            max_relative = 1e-12
        );
    }

    #[test]
    fn encircled_energy_limits() {
        assert_eq!(encircled_energy(0.0), 0.0);
        assert!(encircled_energy(50.0) > 0.98);
        assert!(encircled_energy(50.0) <= 1.0);
    }

    #[test]
    fn encircled_energy_is_monotone_on_a_coarse_grid() {
        let mut prev = 0.0;
        for i in 1..=400 {
            let e = encircled_energy(i as f64 * 0.05);
            assert!(e >= prev - 1e-15, "dip at x = {}", i as f64 * 0.05);
            prev = e;
        }
    }

    #[test]
    fn far_field_guard() {
        // 0.5 m aperture at 580 nm: Fresnel distance ≈ 431 km.
        let fresnel = fresnel_distance_m(0.5, 580e-9);
        assert_relative_eq!(fresnel, 431_034.482_758, max_relative = 1e-9);

        assert!(ensure_far_field(1.0e6, 0.5, 580e-9).is_ok());
        let err = ensure_far_field(1.0e5, 0.5, 580e-9).unwrap_err();
        match err {
            Error::FarFieldViolation {
                slant_m,
                fresnel_distance_m,
            } => {
                assert_eq!(slant_m, 1.0e5);
                assert_relative_eq!(fresnel_distance_m, fresnel);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}

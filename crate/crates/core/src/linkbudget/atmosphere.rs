//! Atmospheric transmittance vs wavelength and elevation.
//!
//! The atmosphere enters the link budget as a single per-arm factor
//! `T(λ, el) = T_zenith(λ)^airmass(el)` with the plane-parallel airmass
//! approximation `airmass = 1/sin(el)`. Zenith transmittances come from a
//! small wavelength-interpolated table.
//!
//! The table shipped with this crate ([`AtmosphereTable::calibrated_default`])
//! is **calibrated, not derived from a radiative-transfer code**: its three
//! entries are effective per-channel values fitted so that the crate's
//! end-to-end link budgets land on the benchmark loss/noise figures the
//! test suite pins (see the repository README for the anchors). The entries
//! absorb whatever per-channel physics the single-exponent model leaves out,
//! which is why they are *not* monotone in wavelength and must not be read
//! as a transmission spectrum. Every manifest records the table together
//! with its provenance label so downstream results stay interpretable.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Provenance label attached to the built-in table wherever it is reported.
pub const CALIBRATED_TABLE_LABEL: &str = "calibrated, not MODTRAN";

/// One `(wavelength, zenith transmittance)` table row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtmosphereEntry {
    /// Wavelength, nm.
    pub wavelength_nm: f64,
    /// One-way transmittance looking straight up, in (0, 1].
    pub zenith_transmittance: f64,
}

/// Wavelength-interpolated zenith-transmittance table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtmosphereTable {
    label: String,
    /// Rows sorted by wavelength.
    entries: Vec<AtmosphereEntry>,
}

impl AtmosphereTable {
    /// Build a table from arbitrary entries (sorted internally).
    ///
    /// # Errors
    ///
    /// [`Error::EmptyAtmosphereTable`] for zero rows;
    /// [`Error::InvalidParameter`] for non-positive wavelengths,
    /// transmittances outside (0, 1], or duplicate wavelengths.
    pub fn new(label: impl Into<String>, mut entries: Vec<AtmosphereEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyAtmosphereTable);
        }
        for e in &entries {
            if !e.wavelength_nm.is_finite() || e.wavelength_nm <= 0.0 {
                return Err(Error::invalid(
                    "atmosphere wavelength_nm must be finite and > 0",
                ));
            }
            if !(e.zenith_transmittance > 0.0 && e.zenith_transmittance <= 1.0) {
                return Err(Error::invalid(
                    "atmosphere zenith_transmittance must be in (0, 1]",
                ));
            }
        }
        entries.sort_by(|a, b| a.wavelength_nm.total_cmp(&b.wavelength_nm));
        if entries
            .windows(2)
            .any(|w| w[0].wavelength_nm == w[1].wavelength_nm)
        {
            return Err(Error::invalid("atmosphere table has duplicate wavelengths"));
        }
        Ok(Self {
            label: label.into(),
            entries,
        })
    }

    /// The built-in calibrated table (see module docs for what "calibrated"
    /// means here and why the entries are not monotone in wavelength).
    pub fn calibrated_default() -> Self {
        Self::new(
            CALIBRATED_TABLE_LABEL,
            vec![
                AtmosphereEntry {
                    wavelength_nm: 470.0,
                    zenith_transmittance: 0.3501,
                },
                AtmosphereEntry {
                    wavelength_nm: 580.0,
                    zenith_transmittance: 0.22,
                },
                AtmosphereEntry {
                    wavelength_nm: 670.0,
                    zenith_transmittance: 0.4273,
                },
            ],
        )
        .expect("built-in table is well-formed")
    }

    /// Parse a table from CSV text with the exact header
    /// `wavelength_nm,zenith_transmittance`; blank lines and `#` comments
    /// are ignored.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidParameter`] on malformed text; the same validation
    /// as [`AtmosphereTable::new`] afterwards.
    pub fn from_csv_str(label: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or(Error::EmptyAtmosphereTable)?;
        if header != "wavelength_nm,zenith_transmittance" {
            return Err(Error::invalid(format!(
                "atmosphere CSV must start with header \
                 'wavelength_nm,zenith_transmittance', got '{header}'"
            )));
        }
        let mut entries = Vec::new();
        for line in lines {
            let mut fields = line.split(',');
            let (Some(wl), Some(tz), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::invalid(format!(
                    "atmosphere CSV row '{line}' must have exactly two fields"
                )));
            };
            let parse = |s: &str, what: &str| -> Result<f64> {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::invalid(format!("atmosphere CSV: bad {what} '{s}'")))
            };
            entries.push(AtmosphereEntry {
                wavelength_nm: parse(wl, "wavelength")?,
                zenith_transmittance: parse(tz, "transmittance")?,
            });
        }
        Self::new(label, entries)
    }

    /// Provenance label.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Table rows, sorted by wavelength.
    pub fn entries(&self) -> &[AtmosphereEntry] {
        &self.entries
    }

    /// Zenith transmittance at `wavelength_nm`, linearly interpolated.
    ///
    /// Wavelengths outside the tabulated range are clamped to the nearest
    /// end entry; the second element reports whether clamping occurred so
    /// callers can flag extrapolated results.
    pub fn zenith_transmittance(&self, wavelength_nm: f64) -> (f64, bool) {
        let first = self.entries.first().expect("validated non-empty");
        let last = self.entries.last().expect("validated non-empty");
        if wavelength_nm <= first.wavelength_nm {
            return (
                first.zenith_transmittance,
                wavelength_nm < first.wavelength_nm,
            );
        }
        if wavelength_nm >= last.wavelength_nm {
            return (
                last.zenith_transmittance,
                wavelength_nm > last.wavelength_nm,
            );
        }
        let hi = self
            .entries
            .partition_point(|e| e.wavelength_nm < wavelength_nm);
        let (a, b) = (&self.entries[hi - 1], &self.entries[hi]);
        let f = (wavelength_nm - a.wavelength_nm) / (b.wavelength_nm - a.wavelength_nm);
        (
            a.zenith_transmittance + f * (b.zenith_transmittance - a.zenith_transmittance),
            false,
        )
    }

    /// Slant transmittance `T_zenith^airmass` at the given elevation.
    ///
    /// Returns the transmittance and the clamping flag from
    /// [`AtmosphereTable::zenith_transmittance`].
    pub fn transmittance(
        &self,
        wavelength_nm: f64,
        elevation_rad: f64,
        min_elevation_rad: f64,
    ) -> (f64, bool) {
        let (tz, clamped) = self.zenith_transmittance(wavelength_nm);
        (tz.powf(airmass(elevation_rad, min_elevation_rad)), clamped)
    }
}

/// Plane-parallel airmass `1/sin(elevation)`, capped at the operational
/// elevation floor (links are never evaluated below it, so the cap only
/// guards callers probing the edge).
pub fn airmass(elevation_rad: f64, min_elevation_rad: f64) -> f64 {
    1.0 / elevation_rad.max(min_elevation_rad).sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const DEG: f64 = std::f64::consts::PI / 180.0;

    #[test]
    fn airmass_is_unity_at_zenith_and_capped_at_the_floor() {
        assert_relative_eq!(airmass(90.0 * DEG, 10.0 * DEG), 1.0, max_relative = 1e-12);
        let cap = 1.0 / (10.0 * DEG).sin();
        assert_relative_eq!(airmass(10.0 * DEG, 10.0 * DEG), cap, max_relative = 1e-12);
        // Below the floor the cap takes over instead of diverging.
        assert_relative_eq!(airmass(1.0 * DEG, 10.0 * DEG), cap, max_relative = 1e-12);
        assert_relative_eq!(airmass(-5.0 * DEG, 10.0 * DEG), cap, max_relative = 1e-12);
    }

    #[test]
    fn default_table_entries() {
        let table = AtmosphereTable::calibrated_default();
        assert_eq!(table.label(), CALIBRATED_TABLE_LABEL);
        assert_eq!(table.zenith_transmittance(470.0), (0.3501, false));
        assert_eq!(table.zenith_transmittance(580.0), (0.22, false));
        assert_eq!(table.zenith_transmittance(670.0), (0.4273, false));
    }

    #[test]
    fn interpolation_and_clamping() {
        let table = AtmosphereTable::calibrated_default();
        // Midpoint of the 580→670 segment.
        let (t, clamped) = table.zenith_transmittance(625.0);
        assert_relative_eq!(t, 0.5 * (0.22 + 0.4273), max_relative = 1e-12);
        assert!(!clamped);

        let (t, clamped) = table.zenith_transmittance(400.0);
        assert_eq!(t, 0.3501);
        assert!(clamped);

        let (t, clamped) = table.zenith_transmittance(800.0);
        assert_eq!(t, 0.4273);
        assert!(clamped);
    }

    #[test]
    fn slant_transmittance_follows_airmass_power_law() {
        let table = AtmosphereTable::calibrated_default();
        let (t, _) = table.transmittance(580.0, 30.0 * DEG, 10.0 * DEG);
        // airmass(30°) = 2 exactly.
        assert_relative_eq!(t, 0.22f64.powi(2), max_relative = 1e-12);
    }

    #[test]
    fn csv_round_trip_and_validation() {
        let text = "\
# one-way zenith transmittance per channel
wavelength_nm,zenith_transmittance
670,0.4273
470,0.3501
580,0.22
";
        let table = AtmosphereTable::from_csv_str("test", text).unwrap();
        assert_eq!(table.entries().len(), 3);
        // Sorted on construction regardless of file order.
        assert_eq!(table.entries()[0].wavelength_nm, 470.0);
        assert_eq!(table.zenith_transmittance(580.0), (0.22, false));

        assert!(AtmosphereTable::from_csv_str("x", "nope\n1,2\n").is_err());
        assert!(AtmosphereTable::from_csv_str("x", "").is_err());
        assert!(AtmosphereTable::new("x", vec![]).is_err());
        assert!(AtmosphereTable::new(
            "x",
            vec![AtmosphereEntry {
                wavelength_nm: 580.0,
                zenith_transmittance: 1.5,
            }]
        )
        .is_err());
    }
}

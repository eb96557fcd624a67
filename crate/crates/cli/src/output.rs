//! CSV rendering with a fixed schema and reproducible number formatting.
//!
//! The column set is frozen — external plotting scripts key on it — and
//! every float is written in Rust's shortest round-trip representation so
//! identical results serialize to identical bytes on every platform and
//! worker count. Scientific notation is used outside `[1e-4, 1e7)` to keep
//! tiny probabilities and huge mode counts readable.

use crate::error::CliError;
use satrep_core::PointResult;

/// The fixed CSV header (comma-separated, LF line endings).
pub const CSV_HEADER: &str = "mode,distance_km,altitude_km,n_links,T_FB_s,flybys_per_day,\
P0_avg,P_EG,P_ES,pairs_per_flyby,pairs_per_day,N_mod,storage_ms,noise_error_fraction,\
peak_loss_db";

/// Shortest round-trip decimal for a finite float; scientific notation
/// outside `[1e-4, 1e7)`, bare `0` for zero.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    let mag = x.abs();
    if !(1e-4..1e7).contains(&mag) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Render one result as a CSV row (no trailing newline).
///
/// # Errors
///
/// [`CliError::Numerical`] if any value is non-finite or a probability
/// column leaves `[0, 1]` — both indicate an internal defect, surfaced
/// rather than silently serialized.
pub fn csv_row(r: &PointResult) -> Result<String, CliError> {
    let floats = [
        ("distance_km", r.distance_km),
        ("altitude_km", r.altitude_km),
        ("T_FB_s", r.t_fb_s),
        ("P0_avg", r.p0_avg),
        ("P_EG", r.p_eg),
        ("P_ES", r.p_es),
        ("pairs_per_flyby", r.pairs_per_flyby),
        ("pairs_per_day", r.pairs_per_day),
        ("N_mod", r.n_mod),
        ("storage_ms", r.storage_ms),
        ("noise_error_fraction", r.noise_error_fraction),
        ("peak_loss_db", r.peak_loss_db),
    ];
    for (name, v) in floats {
        if !v.is_finite() {
            return Err(CliError::numerical(format!(
                "non-finite {name} = {v} in results"
            )));
        }
    }
    for (name, v) in [
        ("P0_avg", r.p0_avg),
        ("P_EG", r.p_eg),
        ("P_ES", r.p_es),
        ("noise_error_fraction", r.noise_error_fraction),
    ] {
        if !(0.0..=1.0).contains(&v) {
            return Err(CliError::numerical(format!(
                "probability {name} = {v} outside [0, 1]"
            )));
        }
    }
    Ok(format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.mode.as_str(),
        fmt_f64(r.distance_km),
        fmt_f64(r.altitude_km),
        r.n_links,
        fmt_f64(r.t_fb_s),
        r.flybys_per_day,
        fmt_f64(r.p0_avg),
        fmt_f64(r.p_eg),
        fmt_f64(r.p_es),
        fmt_f64(r.pairs_per_flyby),
        fmt_f64(r.pairs_per_day),
        fmt_f64(r.n_mod),
        fmt_f64(r.storage_ms),
        fmt_f64(r.noise_error_fraction),
        fmt_f64(r.peak_loss_db),
    ))
}

/// Render a full CSV document: header plus one row per result, LF endings,
/// trailing newline.
///
/// # Errors
///
/// Propagates the per-row checks of [`csv_row`].
pub fn render_csv(rows: &[PointResult]) -> Result<String, CliError> {
    let mut out = String::with_capacity(128 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&csv_row(r)?);
        out.push('\n');
    }
    Ok(out)
}

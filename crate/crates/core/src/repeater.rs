//! Analytic rates for a nested quantum-repeater chain.
//!
//! The chain spans a total ground distance `L` with `2ⁿ` elementary links
//! of length `L₀ = L/2ⁿ`, each served by its own satellite. Entanglement is
//! first generated across every elementary link, then fused pairwise by
//! entanglement swapping `n` times until one pair spans the full distance.
//!
//! Per source shot, an elementary link succeeds with
//!
//! ```text
//! P_EG = η_source · P0_avg · η_qnd² · η_write²
//! ```
//!
//! (pair creation, two-photon transmission, heralded arrival detection and
//! memory write-in at both ends), and each swapping stage succeeds with
//!
//! ```text
//! P_ES = η_read² · η_det² / 2
//! ```
//!
//! — two memories read out, two photons detected, 1/2 the linear-optics
//! Bell-measurement ceiling. Accounting for the need to have two
//! neighboring links ready before each swap costs roughly a factor 2/3 per
//! nesting level, giving the standard estimate
//!
//! ```text
//! pairs_per_flyby = R_s · T_FB · P_EG · (⅔·P_ES)ⁿ
//! ```
//!
//! whose accuracy is checked against the stochastic model in
//! [`crate::montecarlo`].
//!
//! Two resource figures accompany the rate: the multimode memory depth
//! `N_mod = R_s·η_source·η⁽¹⁾_max·L₀/c` (modes in flight during one
//! heralding round-trip at the best moment of the pass) and the minimum
//! storage time `L/c` (waiting for swap outcomes across the full chain).

use crate::constants::SPEED_OF_LIGHT_M_S;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Device efficiencies of the repeater hardware, each in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Efficiencies {
    /// Pair-source emission efficiency η_source.
    pub source: f64,
    /// Quantum non-demolition heralding efficiency η_qnd.
    pub qnd: f64,
    /// Memory write-in efficiency η_write.
    pub mem_write: f64,
    /// Memory read-out efficiency η_read.
    pub mem_read: f64,
    /// Photon detector efficiency η_det.
    pub detector: f64,
}

impl Default for Efficiencies {
    /// The working point used throughout the benchmark scenarios: every
    /// device at 90 %.
    fn default() -> Self {
        Self {
            source: 0.9,
            qnd: 0.9,
            mem_write: 0.9,
            mem_read: 0.9,
            detector: 0.9,
        }
    }
}

impl Efficiencies {
    /// Check all five efficiencies are probabilities.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidParameter`] naming the offending field.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eta_source", self.source),
            ("eta_qnd", self.qnd),
            ("eta_mem_write", self.mem_write),
            ("eta_mem_read", self.mem_read),
            ("eta_detector", self.detector),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::invalid(format!("{name} must be in [0, 1], got {v}")));
            }
        }
        Ok(())
    }
}

/// A repeater chain configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    /// Nesting depth `n`; the chain has `2ⁿ` elementary links.
    pub nesting_n: u32,
    /// Entangled-pair source repetition rate `R_s`, Hz.
    pub source_rate_hz: f64,
    /// Device efficiencies.
    pub efficiencies: Efficiencies,
}

impl ChainConfig {
    /// Number of elementary links, `2ⁿ`.
    pub fn n_links(&self) -> u64 {
        1u64 << self.nesting_n
    }

    /// Elementary-link length for a total ground distance, m.
    pub fn elementary_length_m(&self, total_ground_distance_m: f64) -> f64 {
        total_ground_distance_m / self.n_links() as f64
    }
}

/// Per-shot elementary-link entanglement-generation probability
/// `P_EG = η_source·P0_avg·η_qnd²·η_write²`.
pub fn p_entanglement_generation(eff: &Efficiencies, p0_avg: f64) -> f64 {
    eff.source * p0_avg * eff.qnd * eff.qnd * eff.mem_write * eff.mem_write
}

/// Entanglement-swapping success probability
/// `P_ES = η_read²·η_det²/2` (the 1/2 is the linear-optics Bell-measurement
/// ceiling).
pub fn p_entanglement_swap(eff: &Efficiencies) -> f64 {
    0.5 * eff.mem_read * eff.mem_read * eff.detector * eff.detector
}

/// Entangled pairs distributed across the full chain during one flyby,
/// `R_s·T_FB·P_EG·(⅔·P_ES)ⁿ`.
pub fn pairs_per_flyby(cfg: &ChainConfig, p0_avg: f64, t_fb_s: f64) -> f64 {
    let p_eg = p_entanglement_generation(&cfg.efficiencies, p0_avg);
    let p_es = p_entanglement_swap(&cfg.efficiencies);
    cfg.source_rate_hz * t_fb_s * p_eg * (2.0 / 3.0 * p_es).powi(cfg.nesting_n as i32)
}

/// Pairs per day given the per-flyby rate and the daily flyby count.
pub fn pairs_per_day(pairs_per_flyby: f64, flybys_per_day: usize) -> f64 {
    pairs_per_flyby * flybys_per_day as f64
}

/// Multimode memory depth `N_mod = R_s·η_source·η⁽¹⁾_max·L₀/c`.
///
/// The memory must hold every mode emitted during one heralding round trip
/// over the elementary link (`elementary_length_m`), discounted by the
/// source efficiency and the best single-arm transmission of the pass.
pub fn modes_required(cfg: &ChainConfig, eta1_max: f64, elementary_length_m: f64) -> f64 {
    cfg.source_rate_hz * cfg.efficiencies.source * eta1_max * elementary_length_m
        / SPEED_OF_LIGHT_M_S
}

/// Minimum memory storage time for swap heralds to traverse the full
/// chain: `L/c`, s.
pub fn storage_time_s(total_ground_distance_m: f64) -> f64 {
    total_ground_distance_m / SPEED_OF_LIGHT_M_S
}

/// One row of a rate-sensitivity analysis: how strongly the end-to-end rate
/// responds to one device efficiency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensitivitySlope {
    /// Which efficiency was varied.
    pub parameter: EfficiencyParam,
    /// Log-log slope `d ln(rate) / d ln(η)` measured by perturbation.
    pub measured_slope: f64,
    /// The exponent the rate formula forces analytically.
    pub analytic_exponent: f64,
}

/// The five device efficiencies, as sweep/sensitivity axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EfficiencyParam {
    Source,
    Qnd,
    MemWrite,
    MemRead,
    Detector,
}

impl EfficiencyParam {
    /// All five axes in a stable order.
    pub const ALL: [EfficiencyParam; 5] = [
        EfficiencyParam::Source,
        EfficiencyParam::Qnd,
        EfficiencyParam::MemWrite,
        EfficiencyParam::MemRead,
        EfficiencyParam::Detector,
    ];

    /// Axis name as used in CLI sweeps and config keys.
    pub fn key(&self) -> &'static str {
        match self {
            EfficiencyParam::Source => "eta_source",
            EfficiencyParam::Qnd => "eta_qnd",
            EfficiencyParam::MemWrite => "eta_mem_write",
            EfficiencyParam::MemRead => "eta_mem_read",
            EfficiencyParam::Detector => "eta_detector",
        }
    }

    fn apply(&self, eff: &mut Efficiencies, factor: f64) {
        match self {
            EfficiencyParam::Source => eff.source *= factor,
            EfficiencyParam::Qnd => eff.qnd *= factor,
            EfficiencyParam::MemWrite => eff.mem_write *= factor,
            EfficiencyParam::MemRead => eff.mem_read *= factor,
            EfficiencyParam::Detector => eff.detector *= factor,
        }
    }

    /// Exponent of the rate in this efficiency: 1 for the source, 2 for the
    /// per-link pair (QND, write-in), `2n` for the per-swap pair (read-out,
    /// detector).
    pub fn analytic_exponent(&self, nesting_n: u32) -> f64 {
        match self {
            EfficiencyParam::Source => 1.0,
            EfficiencyParam::Qnd | EfficiencyParam::MemWrite => 2.0,
            EfficiencyParam::MemRead | EfficiencyParam::Detector => 2.0 * nesting_n as f64,
        }
    }
}

/// Measure `d ln(rate)/d ln(η)` for every device efficiency by a one-sided
/// multiplicative perturbation.
///
/// The rate formula is a pure power law in each efficiency, so the measured
/// slope equals the analytic exponent to floating-point rounding for any
/// perturbation size; `factor` is exposed for callers who want to probe
/// that statement itself.
pub fn rate_sensitivity(
    cfg: &ChainConfig,
    p0_avg: f64,
    t_fb_s: f64,
    factor: f64,
) -> Vec<SensitivitySlope> {
    let base = pairs_per_flyby(cfg, p0_avg, t_fb_s);
    EfficiencyParam::ALL
        .iter()
        .map(|param| {
            let mut perturbed = *cfg;
            param.apply(&mut perturbed.efficiencies, factor);
            let rate = pairs_per_flyby(&perturbed, p0_avg, t_fb_s);
            SensitivitySlope {
                parameter: *param,
                measured_slope: (rate / base).ln() / factor.ln(),
                analytic_exponent: param.analytic_exponent(cfg.nesting_n),
            }
        })
        .collect()
}

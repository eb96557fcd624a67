//! Stochastic validation of the analytic repeater rate.
//!
//! The analytic formula `R_s·T_FB·P_EG·(⅔·P_ES)ⁿ` compresses a genuinely
//! random process — geometric waiting for every elementary link, pairwise
//! `max` at every fusion, geometric retries of failed swaps — into one
//! closed form whose `2/3`-per-level bookkeeping is an approximation. This
//! module samples the process itself so the approximation can be measured
//! instead of trusted:
//!
//! - level 0 waits `W ~ Geometric(p_link)` source shots (slots) for one
//!   elementary link;
//! - level k waits for *both* of two independent level-(k−1) sub-chains
//!   (`max` of their waiting times), then attempts a swap succeeding with
//!   probability `p_swap`; on failure everything below is regenerated,
//!   adding another full level-k waiting time (memoryless restart).
//!
//! The mean end-to-end waiting time over many trials converts to a rate as
//! `slots_per_flyby / mean(W)`.
//!
//! Two closed forms anchor the small-`n` regimes: `E[W] = 1/p` at `n = 0`,
//! and at `n = 1` the exact max-of-two-geometrics expectation
//! `E[max] = 2/p − 1/(2p − p²)` divided by `p_swap`.
//!
//! **Reproducibility contract**: trial `i` draws from `ChaCha8` seeded with
//! the run seed and `set_stream(i)`. Results are therefore bit-identical
//! for a given `(seed, trials)` no matter how trials are scheduled across
//! threads, and seeds are portable to any other implementation of the same
//! generator. Geometric samples use the inverse-CDF transform, so waiting
//! times cost O(1) RNG draws even when `p_link ~ 1e-10`.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Name of the RNG algorithm, recorded in manifests so seeds stay portable.
pub const RNG_ALGORITHM: &str = "ChaCha8";

/// Configuration of one Monte Carlo rate estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    /// Nesting depth `n` (the chain has `2ⁿ` elementary links).
    pub nesting_n: u32,
    /// Per-slot elementary-link success probability (`P_EG` per shot).
    pub p_link: f64,
    /// Entanglement-swapping success probability (`P_ES`).
    pub p_swap: f64,
    /// Source shots available in one flyby (`R_s·T_FB`).
    pub slots_per_flyby: f64,
    /// Number of independent end-to-end waiting-time samples.
    pub trials: u64,
    /// Run seed; trial `i` uses stream `i` of this seed.
    pub rng_seed: u64,
}

impl McConfig {
    /// Check probabilities and sizes are in domain.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidParameter`] naming the offending field.
    pub fn validate(&self) -> Result<()> {
        if !(self.p_link > 0.0 && self.p_link <= 1.0) {
            return Err(Error::invalid(format!(
                "p_link must be in (0, 1], got {}",
                self.p_link
            )));
        }
        if self.nesting_n > 0 && !(self.p_swap > 0.0 && self.p_swap <= 1.0) {
            return Err(Error::invalid(format!(
                "p_swap must be in (0, 1] for nested chains, got {}",
                self.p_swap
            )));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be >= 1"));
        }
        if !self.slots_per_flyby.is_finite() || self.slots_per_flyby <= 0.0 {
            return Err(Error::invalid("slots_per_flyby must be finite and > 0"));
        }
        Ok(())
    }
}

/// A Monte Carlo rate estimate with its uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    /// Sample mean of the end-to-end waiting time, slots.
    pub mean_waiting_slots: f64,
    /// Standard error of that mean, slots.
    pub se_waiting_slots: f64,
    /// `slots_per_flyby / mean_waiting_slots`.
    pub pairs_per_flyby: f64,
    /// Jackknife standard error of `pairs_per_flyby` (the rate is a
    /// nonlinear function of the mean, so the naive delta method is not
    /// taken on faith).
    pub pairs_per_flyby_se: f64,
    /// Number of trials behind the estimate.
    pub trials: u64,
}

/// Draw `W ~ Geometric(p)` on `{1, 2, …}` by inverse transform.
fn sample_geometric(p: f64, rng: &mut impl Rng) -> f64 {
    if p >= 1.0 {
        return 1.0;
    }
    let u: f64 = rng.random();
    // floor(ln(1−u)/ln(1−p)) + 1; ln_1p keeps precision for small p.
    ((1.0 - u).ln() / (-p).ln_1p()).floor() + 1.0
}

fn sample_level(level: u32, cfg: &McConfig, rng: &mut impl Rng) -> f64 {
    if level == 0 {
        return sample_geometric(cfg.p_link, rng);
    }
    let mut total = 0.0;
    loop {
        let a = sample_level(level - 1, cfg, rng);
        let b = sample_level(level - 1, cfg, rng);
        total += a.max(b);
        if rng.random::<f64>() < cfg.p_swap {
            return total;
        }
        // Failed swap: the entanglement below is consumed; regenerate the
        // whole level from scratch (memoryless restart).
    }
}

/// Sample one end-to-end waiting time of the nested chain, in slots.
pub fn sample_chain_waiting_time(cfg: &McConfig, rng: &mut impl Rng) -> f64 {
    sample_level(cfg.nesting_n, cfg, rng)
}

/// Exact expectation of the maximum of two independent `Geometric(p)`
/// variables: `2/p − 1/(2p − p²)` (≈ `3/(2p)` for small `p`).
pub fn expected_max_two_geometric(p: f64) -> f64 {
    2.0 / p - 1.0 / (2.0 * p - p * p)
}

/// Closed-form mean end-to-end waiting time, where one exists:
/// `1/p_link` at `n = 0` and `E[max of two]/p_swap` at `n = 1`.
/// Deeper chains have no simple closed form — that is what
/// [`estimate_rate`] is for.
pub fn expected_waiting_slots(cfg: &McConfig) -> Option<f64> {
    match cfg.nesting_n {
        0 => Some(1.0 / cfg.p_link),
        1 => Some(expected_max_two_geometric(cfg.p_link) / cfg.p_swap),
        _ => None,
    }
}

/// The analytic per-flyby rate this module exists to check:
/// `slots_per_flyby · p_link · (⅔·p_swap)ⁿ`.
pub fn analytic_pairs_per_flyby(cfg: &McConfig) -> f64 {
    cfg.slots_per_flyby * cfg.p_link * (2.0 / 3.0 * cfg.p_swap).powi(cfg.nesting_n as i32)
}

/// Run the full Monte Carlo estimate.
///
/// Trials are embarrassingly parallel and partitioned by index, so the
/// result is bit-identical for a given config regardless of the rayon
/// worker count.
///
/// # Errors
///
/// [`Error::InvalidParameter`] from [`McConfig::validate`].
pub fn estimate_rate(cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    let waits: Vec<f64> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            rng.set_stream(trial);
            sample_chain_waiting_time(cfg, &mut rng)
        })
        .collect();

    let n = waits.len() as f64;
    let total: f64 = waits.iter().sum();
    let mean = total / n;
    let var = waits.iter().map(|w| (w - mean) * (w - mean)).sum::<f64>() / (n - 1.0).max(1.0);
    let se_mean = (var / n).sqrt();

    // Jackknife over leave-one-out rates: with mean_i = (total − w_i)/(n−1),
    // θ_i = S/mean_i, SE² = (n−1)/n · Σ(θ_i − θ̄)².
    let rate = cfg.slots_per_flyby / mean;
    let rate_se = if waits.len() > 1 {
        let thetas: Vec<f64> = waits
            .iter()
            .map(|w| cfg.slots_per_flyby * (n - 1.0) / (total - w))
            .collect();
        let theta_bar = thetas.iter().sum::<f64>() / n;
        let ss = thetas
            .iter()
            .map(|t| (t - theta_bar) * (t - theta_bar))
            .sum::<f64>();
        ((n - 1.0) / n * ss).sqrt()
    } else {
        f64::INFINITY
    };

    Ok(McEstimate {
        mean_waiting_slots: mean,
        se_waiting_slots: se_mean,
        pairs_per_flyby: rate,
        pairs_per_flyby_se: rate_se,
        trials: cfg.trials,
    })
}

/// Sample one end-to-end waiting time with a *time-varying* elementary-link
/// probability (an exploration mode; the headline estimate uses the
/// flyby-averaged constant `p_link`, matching the abstraction of the
/// analytic formula).
///
/// `p_slots` gives the per-slot success probability as a piecewise-constant
/// profile: segment `j` spans `slots_per_segment` consecutive slots at
/// probability `p_slots[j]`, and the profile repeats (next flyby) after the
/// last segment. Sampling skips whole segments geometrically, so the cost
/// is proportional to segments crossed, not slots waited.
pub fn sample_chain_waiting_time_profile(
    cfg: &McConfig,
    p_slots: &[f64],
    slots_per_segment: f64,
    rng: &mut impl Rng,
) -> f64 {
    fn level_profile(
        level: u32,
        cfg: &McConfig,
        p_slots: &[f64],
        slots_per_segment: f64,
        rng: &mut impl Rng,
    ) -> f64 {
        if level == 0 {
            return sample_geometric_profile(p_slots, slots_per_segment, rng);
        }
        let mut total = 0.0;
        loop {
            let a = level_profile(level - 1, cfg, p_slots, slots_per_segment, rng);
            let b = level_profile(level - 1, cfg, p_slots, slots_per_segment, rng);
            total += a.max(b);
            if rng.random::<f64>() < cfg.p_swap {
                return total;
            }
        }
    }
    level_profile(cfg.nesting_n, cfg, p_slots, slots_per_segment, rng)
}

/// Inverse-transform sampling of the first success over a repeating
/// piecewise-constant probability profile.
fn sample_geometric_profile(p_slots: &[f64], slots_per_segment: f64, rng: &mut impl Rng) -> f64 {
    assert!(
        !p_slots.is_empty(),
        "profile must have at least one segment"
    );
    let m = slots_per_segment.max(1.0).round();
    let mut elapsed = 0.0;
    loop {
        for &p in p_slots {
            if p <= 0.0 {
                elapsed += m;
                continue;
            }
            if p >= 1.0 {
                return elapsed + 1.0;
            }
            // P(no success in the whole segment) = (1−p)^m; success iff
            // u < 1 − (1−p)^m ⟺ ln(1−u) > m·ln(1−p).
            let log_q = m * (-p).ln_1p();
            let u: f64 = rng.random();
            if (1.0 - u).ln() > log_q {
                // Success inside this segment: truncated geometric.
                let v: f64 = rng.random();
                let within = ((1.0 - v * (1.0 - log_q.exp())).ln() / (-p).ln_1p()).floor() + 1.0;
                return elapsed + within.min(m);
            }
            elapsed += m;
        }
    }
}

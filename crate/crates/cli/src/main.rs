//! `satrep` — entanglement-distribution rates for satellite-linked
//! repeater chains, direct satellite downlinks, and ground fiber.
//!
//! Subcommands:
//!
//! - `run <cfg.toml>` — evaluate one scenario; writes `results.csv` and
//!   `manifest.json`.
//! - `sweep <cfg.toml> --axis … --from … --to … --step …` — vary one knob
//!   over an inclusive grid; writes `sweep.csv` and `manifest.json`.
//! - `validate <cfg.toml> --trials N --seed S` — Monte Carlo cross-check
//!   of the analytic rate; writes `validation.json` and `manifest.json`.
//! - `rerun <manifest.json>` — re-execute a manifest and verify the
//!   regenerated outputs are byte-identical (exit 3 if not).
//!
//! Exit codes: 0 success, 2 config/usage error, 3 numerical failure.

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use satrep_cli::error::CliError;
use satrep_cli::manifest::{sha256_hex, CommandSpec, Manifest, RngSpec, ToolInfo};
use satrep_cli::sweep::SweepAxis;
use satrep_cli::{config, output, sweep};
use satrep_core::montecarlo::{estimate_rate, McConfig, RNG_ALGORITHM};
use satrep_core::{evaluate, BackgroundEnvironment, Mode, PointResult, Scenario};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Sky-background preset override.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum BackgroundArg {
    /// Daytime sky.
    Day,
    /// Clear night sky.
    Night,
    /// No background light.
    None,
}

impl From<BackgroundArg> for BackgroundEnvironment {
    fn from(b: BackgroundArg) -> Self {
        match b {
            BackgroundArg::Day => BackgroundEnvironment::Day,
            BackgroundArg::Night => BackgroundEnvironment::Night,
            BackgroundArg::None => BackgroundEnvironment::None,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "satrep",
    version,
    about = "Entanglement-distribution rates for satellite-linked repeater chains"
)]
struct Cli {
    /// Output directory for result files (created if missing).
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Override the scenario's sky-background preset.
    #[arg(long, global = true, value_enum)]
    background: Option<BackgroundArg>,
    /// Worker threads for sweeps and Monte Carlo (default: all cores).
    /// Output bytes are identical for any value.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario file into results.csv + manifest.json.
    Run {
        /// Scenario file (TOML).
        config: PathBuf,
    },
    /// Sweep one scenario knob over an inclusive grid into sweep.csv.
    Sweep {
        /// Scenario file (TOML) providing the base point.
        config: PathBuf,
        /// Knob to vary.
        #[arg(long, value_enum)]
        axis: SweepAxis,
        /// First grid value (km for distances/altitudes, bare for
        /// efficiencies).
        #[arg(long)]
        from: f64,
        /// Last grid value, inclusive.
        #[arg(long)]
        to: f64,
        /// Grid spacing.
        #[arg(long)]
        step: f64,
    },
    /// Monte Carlo cross-check of the analytic rate formula.
    Validate {
        /// Scenario file (TOML).
        config: PathBuf,
        /// Independent waiting-time trials.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Base RNG seed (trial i uses stream i).
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Re-execute a manifest and verify byte-identical outputs.
    Rerun {
        /// Manifest file from a previous run.
        manifest: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot build worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let background = cli.background.map(BackgroundEnvironment::from);
    match &cli.command {
        Command::Run { config } => {
            let scenario = load_scenario(config, background)?;
            let run = execute(&scenario, &CommandSpec::Run)?;
            write_outputs(&cli.out, &scenario, &CommandSpec::Run, &run)?;
            print_summary(&run.results[0]);
            println!("wrote {}", file_list(&cli.out, &run));
            Ok(())
        }
        Command::Sweep {
            config,
            axis,
            from,
            to,
            step,
        } => {
            let scenario = load_scenario(config, background)?;
            let spec = CommandSpec::Sweep {
                axis: *axis,
                from: *from,
                to: *to,
                step: *step,
            };
            let run = execute(&scenario, &spec)?;
            write_outputs(&cli.out, &scenario, &spec, &run)?;
            let dark = run
                .results
                .iter()
                .filter(|r| r.flags.no_mutual_visibility)
                .count();
            if dark > 0 {
                eprintln!(
                    "warning: {dark} of {} points have no mutual visibility (structural zeros)",
                    run.results.len()
                );
            }
            println!(
                "wrote {} ({} rows)",
                file_list(&cli.out, &run),
                run.results.len()
            );
            Ok(())
        }
        Command::Validate {
            config,
            trials,
            seed,
        } => {
            let scenario = load_scenario(config, background)?;
            let spec = CommandSpec::Validate {
                trials: *trials,
                seed: *seed,
            };
            let run = execute(&scenario, &spec)?;
            write_outputs(&cli.out, &scenario, &spec, &run)?;
            print_validation(&run);
            println!("wrote {}", file_list(&cli.out, &run));
            Ok(())
        }
        Command::Rerun { manifest } => {
            if background.is_some() {
                return Err(CliError::usage(
                    "rerun reproduces the manifest exactly; --background cannot be overridden",
                ));
            }
            rerun(manifest, &cli.out)
        }
    }
}

fn load_scenario(
    config: &Path,
    background: Option<BackgroundEnvironment>,
) -> Result<Scenario, CliError> {
    let cfg = config::load(config)?;
    let base_dir = config
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    config::resolve(&cfg, base_dir, background)
}

/// Everything a command produces: output files (name → content), the
/// evaluated rows, and the RNG contract if randomness was used.
struct RunArtifacts {
    files: BTreeMap<String, String>,
    results: Vec<PointResult>,
    rng: Option<RngSpec>,
    validation: Option<ValidationReport>,
}

/// Execute a command against a resolved scenario, producing output bytes
/// deterministically (worker count never changes them).
fn execute(scenario: &Scenario, command: &CommandSpec) -> Result<RunArtifacts, CliError> {
    match command {
        CommandSpec::Run => {
            let result = evaluate(scenario)?;
            warn_flags(&result);
            let csv = output::render_csv(std::slice::from_ref(&result))?;
            Ok(RunArtifacts {
                files: BTreeMap::from([("results.csv".to_owned(), csv)]),
                results: vec![result],
                rng: None,
                validation: None,
            })
        }
        CommandSpec::Sweep {
            axis,
            from,
            to,
            step,
        } => {
            let grid = sweep::build_grid(*from, *to, *step)?;
            let points = grid
                .iter()
                .map(|&v| sweep::apply(*axis, v, scenario))
                .collect::<Result<Vec<_>, _>>()?;
            let evals: Vec<Result<PointResult, satrep_core::Error>> =
                points.par_iter().map(evaluate).collect();
            let mut rows = Vec::with_capacity(evals.len());
            for (value, eval) in grid.iter().zip(evals) {
                match eval {
                    Ok(row) => rows.push(row),
                    Err(e) => {
                        let inner = CliError::from(e);
                        let msg = format!("sweep point {}={value}: {inner}", axis.as_str());
                        return Err(match inner {
                            CliError::Usage(_) => CliError::Usage(msg),
                            CliError::Numerical(_) => CliError::Numerical(msg),
                        });
                    }
                }
            }
            let csv = output::render_csv(&rows)?;
            Ok(RunArtifacts {
                files: BTreeMap::from([("sweep.csv".to_owned(), csv)]),
                results: rows,
                rng: None,
                validation: None,
            })
        }
        CommandSpec::Validate { trials, seed } => {
            let result = evaluate(scenario)?;
            warn_flags(&result);
            let (report, rng) = validate_point(scenario, &result, *trials, *seed)?;
            let json = report.to_json();
            Ok(RunArtifacts {
                files: BTreeMap::from([("validation.json".to_owned(), json)]),
                results: vec![result],
                rng,
                validation: Some(report),
            })
        }
    }
}

fn warn_flags(r: &PointResult) {
    if r.flags.no_mutual_visibility {
        eprintln!(
            "warning: no mutual visibility at distance {} km, altitude {} km; \
             rate is a structural zero",
            r.distance_km, r.altitude_km
        );
    }
    if r.flags.wavelength_clamped {
        eprintln!(
            "warning: wavelength outside the atmosphere table; zenith \
             transmittance clamped to the nearest entry"
        );
    }
}

/// Analytic-side inputs handed to the Monte Carlo sampler.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct AnalyticBlock {
    nesting_n: u32,
    p_link: f64,
    p_swap: f64,
    slots_per_flyby: f64,
    pairs_per_flyby: f64,
    pairs_per_day: f64,
}

/// Monte Carlo side of the cross-check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct McBlock {
    algorithm: String,
    seed: u64,
    trials: u64,
    mean_waiting_slots: f64,
    se_waiting_slots: f64,
    pairs_per_flyby: f64,
    pairs_per_flyby_se: f64,
    pairs_per_day: f64,
}

/// The `validation.json` document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ValidationReport {
    no_mutual_visibility: bool,
    analytic: AnalyticBlock,
    mc: Option<McBlock>,
    /// Analytic over Monte Carlo pairs-per-flyby (the nesting-correction
    /// factor in the analytic formula is approximate, so this drifts from
    /// 1 as the depth grows).
    ratio_analytic_over_mc: Option<f64>,
}

impl ValidationReport {
    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn validate_point(
    scenario: &Scenario,
    result: &PointResult,
    trials: u64,
    seed: u64,
) -> Result<(ValidationReport, Option<RngSpec>), CliError> {
    let nesting_n = result.n_links.trailing_zeros();
    let (p_link, p_swap) = match scenario.mode {
        Mode::Repeater => (result.p_eg, result.p_es),
        Mode::Direct | Mode::Fiber => (result.p0_avg, 1.0),
    };
    let slots_per_flyby = scenario.source_rate_hz * result.t_fb_s;
    let analytic = AnalyticBlock {
        nesting_n,
        p_link,
        p_swap,
        slots_per_flyby,
        pairs_per_flyby: result.pairs_per_flyby,
        pairs_per_day: result.pairs_per_day,
    };

    if result.flags.no_mutual_visibility {
        return Ok((
            ValidationReport {
                no_mutual_visibility: true,
                analytic,
                mc: None,
                ratio_analytic_over_mc: None,
            },
            None,
        ));
    }

    let mc_cfg = McConfig {
        nesting_n,
        p_link,
        p_swap,
        slots_per_flyby,
        trials,
        rng_seed: seed,
    };
    let est = estimate_rate(&mc_cfg)?;
    let report = ValidationReport {
        no_mutual_visibility: false,
        analytic,
        mc: Some(McBlock {
            algorithm: RNG_ALGORITHM.to_owned(),
            seed,
            trials,
            mean_waiting_slots: est.mean_waiting_slots,
            se_waiting_slots: est.se_waiting_slots,
            pairs_per_flyby: est.pairs_per_flyby,
            pairs_per_flyby_se: est.pairs_per_flyby_se,
            pairs_per_day: est.pairs_per_flyby * result.flybys_per_day as f64,
        }),
        ratio_analytic_over_mc: Some(result.pairs_per_flyby / est.pairs_per_flyby),
    };
    let rng = RngSpec {
        algorithm: RNG_ALGORITHM.to_owned(),
        seed,
        trials,
        stream_per_trial: true,
    };
    Ok((report, Some(rng)))
}

/// Write every output file plus the manifest describing them.
fn write_outputs(
    out_dir: &Path,
    scenario: &Scenario,
    command: &CommandSpec,
    run: &RunArtifacts,
) -> Result<(), CliError> {
    std::fs::create_dir_all(out_dir)?;
    let mut outputs = BTreeMap::new();
    for (name, content) in &run.files {
        std::fs::write(out_dir.join(name), content)?;
        outputs.insert(name.clone(), sha256_hex(content.as_bytes()));
    }
    let manifest = Manifest {
        tool: ToolInfo::current(),
        command: command.clone(),
        scenario: scenario.clone(),
        rng: run.rng.clone(),
        results: run.results.clone(),
        outputs,
    };
    std::fs::write(out_dir.join("manifest.json"), manifest.to_json())?;
    Ok(())
}

fn rerun(manifest_path: &Path, out_dir: &Path) -> Result<(), CliError> {
    let recorded = Manifest::load(manifest_path)?;
    let run = execute(&recorded.scenario, &recorded.command)?;
    std::fs::create_dir_all(out_dir)?;

    let mut mismatches = Vec::new();
    for (name, expected_sha) in &recorded.outputs {
        match run.files.get(name) {
            Some(content) => {
                std::fs::write(out_dir.join(name), content)?;
                let got = sha256_hex(content.as_bytes());
                if &got == expected_sha {
                    println!("reproduced {name} (sha256 ok)");
                } else {
                    mismatches.push(format!(
                        "{name}: manifest sha256 {expected_sha}, regenerated {got}"
                    ));
                }
            }
            None => mismatches.push(format!("{name}: not regenerated by this command")),
        }
    }
    for name in run.files.keys() {
        if !recorded.outputs.contains_key(name) {
            mismatches.push(format!("{name}: regenerated but absent from the manifest"));
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(CliError::numerical(format!(
            "rerun did not reproduce the manifest: {}",
            mismatches.join("; ")
        )))
    }
}

fn file_list(out_dir: &Path, run: &RunArtifacts) -> String {
    let mut names: Vec<&str> = run.files.keys().map(String::as_str).collect();
    names.push("manifest.json");
    names
        .iter()
        .map(|n| out_dir.join(n).display().to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_summary(r: &PointResult) {
    let lines = [
        ("mode", r.mode.as_str().to_owned()),
        ("distance_km", output::fmt_f64(r.distance_km)),
        ("altitude_km", output::fmt_f64(r.altitude_km)),
        ("n_links", r.n_links.to_string()),
        ("T_FB_s", output::fmt_f64(r.t_fb_s)),
        ("flybys_per_day", r.flybys_per_day.to_string()),
        ("P0_avg", output::fmt_f64(r.p0_avg)),
        ("P_EG", output::fmt_f64(r.p_eg)),
        ("P_ES", output::fmt_f64(r.p_es)),
        ("pairs_per_flyby", output::fmt_f64(r.pairs_per_flyby)),
        ("pairs_per_day", output::fmt_f64(r.pairs_per_day)),
        ("N_mod", output::fmt_f64(r.n_mod)),
        ("storage_ms", output::fmt_f64(r.storage_ms)),
        (
            "noise_error_fraction",
            output::fmt_f64(r.noise_error_fraction),
        ),
        ("peak_loss_db", output::fmt_f64(r.peak_loss_db)),
    ];
    for (key, value) in lines {
        println!("{key:<22} {value}");
    }
    if let Some(n) = r.flags.auto_nesting_chosen {
        println!("{:<22} {n}", "auto_nesting_chosen");
    }
}

fn print_validation(run: &RunArtifacts) {
    let Some(report) = &run.validation else {
        return;
    };
    if report.no_mutual_visibility {
        println!("no mutual visibility: analytic rate is a structural zero; nothing to sample");
        return;
    }
    let mc = report.mc.as_ref().expect("mc present when visible");
    println!(
        "analytic pairs_per_flyby {}",
        output::fmt_f64(report.analytic.pairs_per_flyby)
    );
    println!(
        "mc pairs_per_flyby       {} ± {}  ({} trials, seed {})",
        output::fmt_f64(mc.pairs_per_flyby),
        output::fmt_f64(mc.pairs_per_flyby_se),
        mc.trials,
        mc.seed
    );
    match report.ratio_analytic_over_mc {
        Some(ratio) => println!("analytic / mc            {}", output::fmt_f64(ratio)),
        None => println!("analytic / mc            undefined"),
    }
}

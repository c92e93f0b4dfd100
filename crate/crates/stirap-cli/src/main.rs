// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! Command-line driver: run the transfer simulation, parameter sweeps,
//! readout inversion and sanity checks from presets or a JSON scenario file.
//!
//! Exit codes: 0 success, 1 failed check, 2 configuration problem, 3 numeric
//! problem (integration instability or invariant violation), 4 singular
//! tomography calibration.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stirap_core::dynamics::convergence_check;
use stirap_core::experiments::{
    contour_efficiency, contours_to_csv, run_sweep, run_time_domain, sweep_detuning, Scenario,
    SweepParam, SweepSpec,
};
use stirap_core::pulses::{adiabaticity_check, envelope_csv, DEFAULT_DETUNING_THRESHOLD};
use stirap_core::qutrit::DensityMatrix;
use stirap_core::tomography::batch_invert_csv;
use stirap_core::Error as CoreError;

use config::{rad_to_mhz, AxisConfig, ScenarioConfig, SweepConfig};

#[derive(Parser)]
#[command(
    name = "stirap",
    about = "Master-equation simulator for adiabatic 0->2 population transfer in a ladder-type superconducting qutrit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Built-in preset: paper-fig2, paper-fig3, paper-fig4a or paper-fig4b.
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,

    /// Path to a JSON scenario file.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output directory for CSV/JSON files.
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,

    /// Worker threads for sweeps and phase averaging (default: all cores).
    /// Results are identical for any worker count.
    #[arg(long)]
    workers: Option<usize>,

    /// Coarser preset grids for quick runs.
    #[arg(long)]
    coarse: bool,

    /// Override the peak Rabi rate (MHz).
    #[arg(long)]
    omega0_mhz: Option<f64>,

    /// Override the pulse timescale (ns); rescales the window to +-3 T_d.
    #[arg(long)]
    td_ns: Option<f64>,

    /// Override the pump detuning (MHz).
    #[arg(long)]
    delta_p_mhz: Option<f64>,

    /// Override the Stokes detuning (MHz).
    #[arg(long)]
    delta_s_mhz: Option<f64>,

    /// Override the number of phase samples in the tone-phase average.
    #[arg(long)]
    phi_samples: Option<usize>,

    /// Override the integrator step (ps).
    #[arg(long)]
    dt_ps: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Time-domain transfer: trajectory CSV plus a summary JSON.
    Evolve {
        #[command(flatten)]
        common: CommonOpts,
        /// Also write the full density matrix at every sample.
        #[arg(long)]
        full_state: bool,
    },
    /// Parameter sweep: detuning resonances, efficiency contours, or a
    /// custom axis.
    Sweep {
        #[command(flatten)]
        common: CommonOpts,
        /// First sweep axis, e.g. delta_p=-60:120:1 (MHz/ns display units).
        #[arg(long)]
        axis1: Option<String>,
        /// Optional second axis, e.g. td=10:200:5.
        #[arg(long)]
        axis2: Option<String>,
        /// Figure of merit: final_p2, max_p2 or max_p1.
        #[arg(long)]
        metric: Option<String>,
    },
    /// Invert measured tunneling probabilities into level populations.
    Tomography {
        #[command(flatten)]
        common: CommonOpts,
        /// CSV input with header pA,pB.
        #[arg(long)]
        input: PathBuf,
    },
    /// Verify the adiabaticity conditions and integrator convergence.
    Check {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Dump the drive envelopes as plot-ready CSV.
    Pulses {
        #[command(flatten)]
        common: CommonOpts,
        /// Number of samples across the +-3 T_d window.
        #[arg(long, default_value_t = 601)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(classify(&err))
        }
    }
}

fn classify(err: &CoreError) -> u8 {
    match err {
        CoreError::SingularCalibration { .. } => 4,
        CoreError::StepInstability { .. } | CoreError::InvariantViolation { .. } => 3,
        CoreError::PhaseSample { source, .. } => classify(source),
        CoreError::InvalidParams(_)
        | CoreError::UnknownAxis(_)
        | CoreError::NoPeakFound
        | CoreError::DegenerateDrive
        | CoreError::InvalidPopulations { .. } => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode, CoreError> {
    match cli.command {
        Command::Evolve { common, full_state } => cmd_evolve(&common, full_state),
        Command::Sweep {
            common,
            axis1,
            axis2,
            metric,
        } => cmd_sweep(&common, axis1, axis2, metric),
        Command::Tomography { common, input } => cmd_tomography(&common, &input),
        Command::Check { common } => cmd_check(&common),
        Command::Pulses { common, samples } => cmd_pulses(&common, samples),
    }
}

fn load_config(common: &CommonOpts) -> Result<ScenarioConfig, CoreError> {
    let mut cfg = match (&common.preset, &common.config) {
        (Some(name), None) => config::preset(name, common.coarse)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CoreError::InvalidParams(format!("cannot read {}: {e}", path.display()))
            })?;
            serde_json::from_str(&text).map_err(|e| {
                CoreError::InvalidParams(format!("cannot parse {}: {e}", path.display()))
            })?
        }
        _ => {
            return Err(CoreError::InvalidParams(
                "exactly one of --preset or --config is required".into(),
            ))
        }
    };
    if let Some(v) = common.omega0_mhz {
        cfg.drive.omega0_mhz = v;
    }
    if let Some(v) = common.td_ns {
        cfg.drive.td_ns = v;
        cfg.drive.t_start_ns = None;
        cfg.drive.t_end_ns = None;
    }
    if let Some(v) = common.delta_p_mhz {
        cfg.drive.delta_p_mhz = v;
    }
    if let Some(v) = common.delta_s_mhz {
        cfg.drive.delta_s_mhz = v;
    }
    if let Some(v) = common.phi_samples {
        cfg.integrator.phi_samples = Some(v);
    }
    if let Some(v) = common.dt_ps {
        cfg.integrator.dt_ps = Some(v);
    }
    Ok(cfg)
}

fn install_workers(common: &CommonOpts) -> Result<(), CoreError> {
    if let Some(workers) = common.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| CoreError::InvalidParams(format!("cannot build worker pool: {e}")))?;
    }
    Ok(())
}

fn ensure_out_dir(dir: &Path) -> Result<(), CoreError> {
    fs::create_dir_all(dir)
        .map_err(|e| CoreError::InvalidParams(format!("cannot create {}: {e}", dir.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CoreError> {
    fs::write(path, contents)
        .map_err(|e| CoreError::InvalidParams(format!("cannot write {}: {e}", path.display())))
}

fn short_fingerprint(scenario: &Scenario) -> String {
    scenario.fingerprint()[..8].to_string()
}

fn sidecar(
    cfg: &ScenarioConfig,
    scenario: &Scenario,
    command: &str,
    extra: serde_json::Value,
) -> serde_json::Value {
    serde_json::json!({
        "command": command,
        "fingerprint": scenario.fingerprint(),
        "timestamp_unix": std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        "scenario": cfg,
        "results": extra,
    })
}

fn cmd_evolve(common: &CommonOpts, full_state: bool) -> Result<ExitCode, CoreError> {
    install_workers(common)?;
    let cfg = load_config(common)?;
    let scenario = cfg.to_scenario()?;
    let (traj, summary) = run_time_domain(&scenario)?;
    ensure_out_dir(&common.out_dir)?;
    let fp = short_fingerprint(&scenario);
    let csv_path = common.out_dir.join(format!("trajectory_{fp}.csv"));
    write_file(&csv_path, &traj.to_csv())?;
    if full_state {
        write_file(
            &common.out_dir.join(format!("states_{fp}.csv")),
            &traj.to_full_csv(),
        )?;
    }
    let summary_json = sidecar(
        &cfg,
        &scenario,
        "evolve",
        serde_json::json!({
            "max_p2": summary.max_p2,
            "t_at_max_ns": summary.t_at_max * 1e9,
            "max_p1_after": summary.max_p1_after,
            "final_p2": summary.final_p2,
            "final_populations": summary.final_populations,
        }),
    );
    write_file(
        &common.out_dir.join(format!("summary_{fp}.json")),
        &serde_json::to_string_pretty(&summary_json).unwrap(),
    )?;
    println!(
        "max_P2 = {:.4} at t = {:.2} ns (max P1 after -T_d/2: {:.4}, final P2: {:.4})",
        summary.max_p2,
        summary.t_at_max * 1e9,
        summary.max_p1_after,
        summary.final_p2
    );
    println!("wrote {}", csv_path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(
    common: &CommonOpts,
    axis1: Option<String>,
    axis2: Option<String>,
    metric: Option<String>,
) -> Result<ExitCode, CoreError> {
    install_workers(common)?;
    let mut cfg = load_config(common)?;
    // Axis flags override any sweep section from the config.
    if let Some(flag) = &axis1 {
        let axis1 = AxisConfig::parse_flag(flag).map_err(CoreError::InvalidParams)?;
        let axis2 = axis2
            .as_ref()
            .map(|f| AxisConfig::parse_flag(f).map_err(CoreError::InvalidParams))
            .transpose()?;
        cfg.sweep = Some(SweepConfig {
            axis1,
            axis2,
            metric: metric.clone().or_else(|| {
                cfg.sweep.as_ref().and_then(|s| s.metric.clone())
            }),
        });
    } else if let (Some(sweep), Some(m)) = (cfg.sweep.as_mut(), metric.clone()) {
        sweep.metric = Some(m);
    }
    let spec: SweepSpec = cfg.to_sweep_spec()?;
    ensure_out_dir(&common.out_dir)?;
    let fp = short_fingerprint(&spec.base);

    let is_detuning = spec.axis1.param == SweepParam::DeltaP && spec.axis2.is_none();
    let is_contour = spec.axis1.param == SweepParam::Omega0
        && spec
            .axis2
            .as_ref()
            .is_some_and(|a| a.param == SweepParam::Td);

    let csv_path = common.out_dir.join(format!("sweep_{fp}.csv"));
    if is_detuning {
        let (result, peaks) = sweep_detuning(&spec)?;
        write_file(&csv_path, &result.to_csv())?;
        let extra = serde_json::json!({
            "metric": result.meta.metric,
            "left_peak_at_mhz": rad_to_mhz(peaks.left.location),
            "left_peak_value": peaks.left.value,
            "left_fwhm_mhz": rad_to_mhz(peaks.left.fwhm),
            "right_peak_at_mhz": rad_to_mhz(peaks.right.location),
            "right_peak_value": peaks.right.value,
            "right_fwhm_mhz": rad_to_mhz(peaks.right.fwhm),
        });
        write_file(
            &common.out_dir.join(format!("sweep_{fp}.json")),
            &serde_json::to_string_pretty(&sidecar(&cfg, &spec.base, "sweep", extra)).unwrap(),
        )?;
        println!(
            "left peak:  {:.3} MHz  value {:.4}  fwhm {:.2} MHz",
            rad_to_mhz(peaks.left.location),
            peaks.left.value,
            rad_to_mhz(peaks.left.fwhm)
        );
        println!(
            "right peak: {:.3} MHz  value {:.4}  fwhm {:.2} MHz",
            rad_to_mhz(peaks.right.location),
            peaks.right.value,
            rad_to_mhz(peaks.right.fwhm)
        );
    } else if is_contour {
        let (result, contours) = contour_efficiency(&spec)?;
        write_file(&csv_path, &result.to_csv())?;
        let contour_path = common.out_dir.join(format!("contours_{fp}.csv"));
        write_file(&contour_path, &contours_to_csv(&contours))?;
        write_file(
            &common.out_dir.join(format!("sweep_{fp}.json")),
            &serde_json::to_string_pretty(&sidecar(
                &cfg,
                &spec.base,
                "sweep",
                serde_json::json!({
                    "metric": result.meta.metric,
                    "contour_levels": stirap_core::experiments::CONTOUR_LEVELS,
                    "contour_lines": contours.len(),
                }),
            ))
            .unwrap(),
        )?;
        println!(
            "{} grid points, {} contour lines; wrote {}",
            result.values.len(),
            contours.len(),
            contour_path.display()
        );
    } else {
        let result = run_sweep(&spec)?;
        write_file(&csv_path, &result.to_csv())?;
        write_file(
            &common.out_dir.join(format!("sweep_{fp}.json")),
            &serde_json::to_string_pretty(&sidecar(
                &cfg,
                &spec.base,
                "sweep",
                serde_json::json!({ "metric": result.meta.metric }),
            ))
            .unwrap(),
        )?;
        println!("{} grid points", result.values.len());
    }
    println!("wrote {}", csv_path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_tomography(common: &CommonOpts, input: &Path) -> Result<ExitCode, CoreError> {
    let cfg = load_config(common)?;
    let calibration = cfg
        .calibration
        .as_ref()
        .ok_or_else(|| {
            CoreError::InvalidParams("no calibration in the preset or config file".into())
        })?
        .to_calibration()?;
    let text = fs::read_to_string(input)
        .map_err(|e| CoreError::InvalidParams(format!("cannot read {}: {e}", input.display())))?;
    let output = batch_invert_csv(&text, &calibration)?;
    ensure_out_dir(&common.out_dir)?;
    let out_path = common.out_dir.join("populations.csv");
    write_file(&out_path, &output)?;
    println!(
        "inverted {} rows (|D| = {:.4}); wrote {}",
        output.lines().count().saturating_sub(1),
        calibration.determinant().abs(),
        out_path.display()
    );
    if calibration.monotonicity_warning() {
        eprintln!("warning: calibration tunneling probabilities are not monotone in level");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(common: &CommonOpts) -> Result<ExitCode, CoreError> {
    install_workers(common)?;
    let cfg = load_config(common)?;
    let scenario = cfg.to_scenario()?;
    let delta = scenario.drive.delta(&scenario.qutrit);
    let report = adiabaticity_check(
        scenario.drive.omega0,
        scenario.drive.td,
        delta,
        DEFAULT_DETUNING_THRESHOLD,
    );
    println!(
        "pulse area: {:.2} rad = {:.2} pi (threshold 10 pi): {}",
        report.area,
        report.area_over_pi,
        if report.area_ok { "PASS" } else { "FAIL" }
    );
    println!(
        "tone separation: delta / peak Rabi = {:.2} (threshold {:.1}): {}",
        report.detuning_ratio,
        report.detuning_threshold,
        if report.detuning_ok { "PASS" } else { "FAIL" }
    );
    let convergence = convergence_check(
        &DensityMatrix::ground(),
        &scenario.qutrit,
        &scenario.drive,
        &scenario.integrator,
    )?;
    println!(
        "step halving: max trace distance {:.3e} (threshold 1e-6): {}",
        convergence.dt_halved_distance,
        if convergence.ok { "PASS" } else { "FAIL" }
    );
    if report.all_ok() && convergence.ok {
        println!("CHECK PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("CHECK FAIL");
        Ok(ExitCode::from(1))
    }
}

fn cmd_pulses(common: &CommonOpts, samples: usize) -> Result<ExitCode, CoreError> {
    let cfg = load_config(common)?;
    let scenario = cfg.to_scenario()?;
    ensure_out_dir(&common.out_dir)?;
    let fp = short_fingerprint(&scenario);
    let path = common.out_dir.join(format!("envelopes_{fp}.csv"));
    write_file(
        &path,
        &envelope_csv(scenario.drive.omega0, scenario.drive.td, samples),
    )?;
    println!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}

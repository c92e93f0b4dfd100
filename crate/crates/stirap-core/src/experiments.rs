// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! Figure-level studies: φ-averaged time-domain transfer, detuning-resonance
//! sweeps, efficiency contours in the (Ω₀, T_d) plane, and the robustness
//! comparison against sequential resonant π pulses.
//!
//! Grid points are independent work items; they are evaluated on the rayon
//! pool and reduced strictly by grid index, so a sweep produces bit-identical
//! output no matter how many workers run it.

use std::f64::consts::{PI, TAU};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::Serialize;

use crate::contour::{extract_closed_contours, ContourLine};
use crate::dynamics::{evolve, phase_average, IntegratorConfig, Trajectory};
use crate::error::{Error, Result};
use crate::pulses::{pulse_area, PiSequence, PiShape};
use crate::qutrit::{DensityMatrix, DriveSchedule, QutritParams};

/// Everything needed to run one simulation.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct Scenario {
    pub qutrit: QutritParams,
    pub drive: DriveSchedule,
    pub integrator: IntegratorConfig,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.qutrit.validate()?;
        self.drive.validate()?;
        self.integrator.validate(&self.drive)
    }

    /// Stable 64-bit FNV-1a hash of the serialized scenario, as hex. Output
    /// files carry this so reruns of the same setup overwrite each other.
    pub fn fingerprint(&self) -> String {
        let encoded = serde_json::to_string(self).expect("scenario serializes");
        let mut hash = 0xcbf29ce484222325_u64;
        for byte in encoded.as_bytes() {
            hash ^= u64::from(*byte);
            hash = hash.wrapping_mul(0x100000001b3);
        }
        format!("{hash:016x}")
    }

    /// Copy with one swept parameter replaced (SI units). Changing `td`
    /// re-derives the ±3 T_d window; the integrator step is left on
    /// automatic so it follows the new timescales.
    pub fn with_param(&self, param: SweepParam, value: f64) -> Scenario {
        let mut out = *self;
        match param {
            SweepParam::DeltaP => out.drive.delta_p = value,
            SweepParam::DeltaS => out.drive.delta_s = value,
            SweepParam::Omega0 => out.drive = out.drive.with_omega0(value),
            SweepParam::Td => out.drive = out.drive.with_td(value),
            SweepParam::PulseArea => {
                let omega0 = value / (envelope_area_factor() * out.drive.td);
                out.drive = out.drive.with_omega0(omega0);
            }
            SweepParam::Phi => out.drive.phi = value,
        }
        out
    }
}

/// Dimensionless ∫ F dt / T_d of the envelope family, so that
/// area = Ω₀ · T_d · factor.
pub fn envelope_area_factor() -> f64 {
    pulse_area(1.0, 1.0)
}

/// Registry of sweepable parameters.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    DeltaP,
    DeltaS,
    Omega0,
    Td,
    PulseArea,
    Phi,
}

impl SweepParam {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "delta_p" => Ok(SweepParam::DeltaP),
            "delta_s" => Ok(SweepParam::DeltaS),
            "omega0" => Ok(SweepParam::Omega0),
            "td" => Ok(SweepParam::Td),
            "pulse_area" | "pulse-area" => Ok(SweepParam::PulseArea),
            "phi" => Ok(SweepParam::Phi),
            other => Err(Error::UnknownAxis(other.to_string())),
        }
    }

    /// CSV column header, carrying the display unit.
    pub fn column(&self) -> &'static str {
        match self {
            SweepParam::DeltaP => "delta_p_mhz",
            SweepParam::DeltaS => "delta_s_mhz",
            SweepParam::Omega0 => "omega0_mhz",
            SweepParam::Td => "td_ns",
            SweepParam::PulseArea => "pulse_area_pi",
            SweepParam::Phi => "phi_rad",
        }
    }

    /// SI -> display-unit conversion used in CSV output.
    pub fn to_display(&self, si: f64) -> f64 {
        match self {
            SweepParam::DeltaP | SweepParam::DeltaS | SweepParam::Omega0 => si / TAU / 1e6,
            SweepParam::Td => si * 1e9,
            SweepParam::PulseArea => si / PI,
            SweepParam::Phi => si,
        }
    }
}

/// One sweep axis: a parameter and its grid values in SI units.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxisSpec {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

impl AxisSpec {
    /// Inclusive range with fixed step.
    pub fn from_range(param: SweepParam, start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidParams(format!(
                "sweep step must be > 0, got {step}"
            )));
        }
        if stop < start {
            return Err(Error::InvalidParams(format!(
                "empty sweep range [{start}, {stop}]"
            )));
        }
        let count = ((stop - start) / step + 0.5).floor() as usize + 1;
        let values = (0..count).map(|i| start + i as f64 * step).collect();
        Ok(AxisSpec { param, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Grid spacing (uniform grids only; used for peak-location tolerances).
    pub fn step(&self) -> f64 {
        if self.values.len() < 2 {
            0.0
        } else {
            self.values[1] - self.values[0]
        }
    }
}

/// Figure of merit extracted from each φ-averaged trajectory.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    FinalP2,
    MaxP2,
    MaxP1,
}

impl Metric {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "final_p2" => Ok(Metric::FinalP2),
            "max_p2" => Ok(Metric::MaxP2),
            "max_p1" => Ok(Metric::MaxP1),
            other => Err(Error::InvalidParams(format!(
                "unknown metric '{other}' (expected final_p2, max_p2 or max_p1)"
            ))),
        }
    }

    pub fn column(&self) -> &'static str {
        match self {
            Metric::FinalP2 => "final_p2",
            Metric::MaxP2 => "max_p2",
            Metric::MaxP1 => "max_p1",
        }
    }

    fn extract(&self, traj: &Trajectory) -> f64 {
        match self {
            Metric::FinalP2 => traj.final_populations()[2],
            Metric::MaxP2 => traj.max_population(2).1,
            Metric::MaxP1 => traj.max_population(1).1,
        }
    }
}

/// A 1D or 2D parameter scan around a base scenario.
#[derive(Clone, Debug, Serialize)]
pub struct SweepSpec {
    pub axis1: AxisSpec,
    pub axis2: Option<AxisSpec>,
    pub base: Scenario,
    pub metric: Metric,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepMeta {
    pub fingerprint: String,
    pub timestamp_unix: u64,
    pub metric: Metric,
    pub phi_samples: usize,
}

/// Metric values over the grid, row-major in (axis1, axis2).
#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub axis1: AxisSpec,
    pub axis2: Option<AxisSpec>,
    pub values: Vec<f64>,
    pub meta: SweepMeta,
}

impl SweepResult {
    /// Long-format CSV: one row per grid point, axis columns first.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.axis2 {
            None => {
                out.push_str(&format!(
                    "{},{}\n",
                    self.axis1.param.column(),
                    self.meta.metric.column()
                ));
                for (v, value) in self.axis1.values.iter().zip(&self.values) {
                    out.push_str(&format!("{},{}\n", self.axis1.param.to_display(*v), value));
                }
            }
            Some(axis2) => {
                out.push_str(&format!(
                    "{},{},{}\n",
                    self.axis1.param.column(),
                    axis2.param.column(),
                    self.meta.metric.column()
                ));
                for (i, v1) in self.axis1.values.iter().enumerate() {
                    for (j, v2) in axis2.values.iter().enumerate() {
                        out.push_str(&format!(
                            "{},{},{}\n",
                            self.axis1.param.to_display(*v1),
                            axis2.param.to_display(*v2),
                            self.values[i * axis2.values.len() + j]
                        ));
                    }
                }
            }
        }
        out
    }
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// φ-averaged run of one scenario with invariant checks on every recorded
/// sample.
fn run_averaged(scenario: &Scenario) -> Result<Trajectory> {
    let traj = phase_average(
        &DensityMatrix::ground(),
        &scenario.qutrit,
        &scenario.drive,
        &scenario.integrator,
    )?;
    traj.check_invariants()?;
    Ok(traj)
}

fn run_metric(scenario: &Scenario, metric: Metric) -> Result<f64> {
    let traj = run_averaged(scenario)?;
    let value = metric.extract(&traj);
    if !(-1e-8..=1.0 + 1e-6).contains(&value) {
        return Err(Error::InvariantViolation {
            t_ns: f64::NAN,
            what: format!("sweep metric {value} outside [0, 1]"),
        });
    }
    Ok(value)
}

/// Evaluate a sweep grid. Work is farmed out per grid point; the result
/// vector is assembled in index order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.base.validate()?;
    if spec.axis1.is_empty() {
        return Err(Error::InvalidParams("sweep axis1 has no points".into()));
    }
    let values: Vec<Result<f64>> = match &spec.axis2 {
        None => spec
            .axis1
            .values
            .par_iter()
            .map(|v| run_metric(&spec.base.with_param(spec.axis1.param, *v), spec.metric))
            .collect(),
        Some(axis2) => {
            if axis2.is_empty() {
                return Err(Error::InvalidParams("sweep axis2 has no points".into()));
            }
            let n2 = axis2.len();
            (0..spec.axis1.len() * n2)
                .into_par_iter()
                .map(|k| {
                    let scenario = spec
                        .base
                        .with_param(spec.axis1.param, spec.axis1.values[k / n2])
                        .with_param(axis2.param, axis2.values[k % n2]);
                    run_metric(&scenario, spec.metric)
                })
                .collect()
        }
    };
    let mut collected = Vec::with_capacity(values.len());
    for v in values {
        collected.push(v?);
    }
    Ok(SweepResult {
        axis1: spec.axis1.clone(),
        axis2: spec.axis2.clone(),
        values: collected,
        meta: SweepMeta {
            fingerprint: spec.base.fingerprint(),
            timestamp_unix: now_unix(),
            metric: spec.metric,
            phi_samples: spec.base.integrator.phi_samples,
        },
    })
}

/// Summary of one φ-averaged time-domain run.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct TimeDomainSummary {
    pub max_p2: f64,
    /// Time of the P2 maximum (s).
    pub t_at_max: f64,
    /// Largest P1 over t > -T_d/2, i.e. once the transfer is under way.
    pub max_p1_after: f64,
    pub final_p2: f64,
    pub final_populations: [f64; 3],
}

/// Time-domain transfer study (trajectory plus headline numbers).
pub fn run_time_domain(scenario: &Scenario) -> Result<(Trajectory, TimeDomainSummary)> {
    scenario.validate()?;
    let traj = run_averaged(scenario)?;
    let (t_at_max, max_p2) = traj.max_population(2);
    let (_, max_p1_after) = traj.max_population_after(1, -scenario.drive.td / 2.0);
    let summary = TimeDomainSummary {
        max_p2,
        t_at_max,
        max_p1_after,
        final_p2: traj.final_populations()[2],
        final_populations: traj.final_populations(),
    };
    Ok((traj, summary))
}

/// A located resonance.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct Peak {
    /// Axis position, quadratically refined (SI units of the axis).
    pub location: f64,
    /// Metric value at the refined vertex.
    pub value: f64,
    /// Full width at half maximum from linear interpolation of the half-max
    /// crossings, clamped at the scan edges.
    pub fwhm: f64,
}

/// The two dominant resonances of a detuning scan, ordered by position.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct PeakReport {
    pub left: Peak,
    pub right: Peak,
}

/// All strict interior local maxima, refined.
pub fn find_peaks(xs: &[f64], ys: &[f64]) -> Vec<Peak> {
    let mut peaks = Vec::new();
    for i in 1..xs.len().saturating_sub(1) {
        if ys[i] > ys[i - 1] && ys[i] >= ys[i + 1] {
            let (location, value) = refine_vertex(xs, ys, i);
            let fwhm = fwhm_at(xs, ys, i, value);
            peaks.push(Peak {
                location,
                value,
                fwhm,
            });
        }
    }
    peaks
}

fn refine_vertex(xs: &[f64], ys: &[f64], i: usize) -> (f64, f64) {
    let (x0, x1, x2) = (xs[i - 1], xs[i], xs[i + 1]);
    let (y0, y1, y2) = (ys[i - 1], ys[i], ys[i + 1]);
    let denom = (y0 - y1) * (x2 - x1) + (y2 - y1) * (x1 - x0);
    if denom == 0.0 {
        return (x1, y1);
    }
    let vertex =
        x1 + 0.5 * ((y0 - y1) * (x2 - x1).powi(2) - (y2 - y1) * (x1 - x0).powi(2)) / denom;
    // Evaluate the Lagrange parabola through the three points at the vertex.
    let l0 = (vertex - x1) * (vertex - x2) / ((x0 - x1) * (x0 - x2));
    let l1 = (vertex - x0) * (vertex - x2) / ((x1 - x0) * (x1 - x2));
    let l2 = (vertex - x0) * (vertex - x1) / ((x2 - x0) * (x2 - x1));
    (vertex, y0 * l0 + y1 * l1 + y2 * l2)
}

fn fwhm_at(xs: &[f64], ys: &[f64], i: usize, peak_value: f64) -> f64 {
    let half = peak_value / 2.0;
    let mut left = xs[0];
    for k in (0..i).rev() {
        if ys[k] < half {
            let t = (half - ys[k]) / (ys[k + 1] - ys[k]);
            left = xs[k] + t * (xs[k + 1] - xs[k]);
            break;
        }
    }
    let mut right = xs[xs.len() - 1];
    for k in (i + 1)..xs.len() {
        if ys[k] < half {
            let t = (half - ys[k - 1]) / (ys[k] - ys[k - 1]);
            right = xs[k - 1] + t * (xs[k] - xs[k - 1]);
            break;
        }
    }
    right - left
}

/// Detuning scan with resonance report. `axis1` must sweep `delta_p`; the
/// Stokes detuning is fixed by the base scenario.
pub fn sweep_detuning(spec: &SweepSpec) -> Result<(SweepResult, PeakReport)> {
    if spec.axis1.param != SweepParam::DeltaP {
        return Err(Error::InvalidParams(
            "detuning sweep requires axis1 = delta_p".into(),
        ));
    }
    if spec.axis2.is_some() {
        return Err(Error::InvalidParams(
            "detuning sweep is one-dimensional".into(),
        ));
    }
    let result = run_sweep(spec)?;
    let peaks = find_peaks(&result.axis1.values, &result.values);
    if peaks.is_empty() {
        return Err(Error::NoPeakFound);
    }
    // The two tallest maxima, reported left-to-right.
    let mut by_value = peaks.clone();
    by_value.sort_by(|a, b| b.value.partial_cmp(&a.value).unwrap());
    let mut top: Vec<Peak> = by_value.into_iter().take(2).collect();
    top.sort_by(|a, b| a.location.partial_cmp(&b.location).unwrap());
    let report = if top.len() == 2 {
        PeakReport {
            left: top[0],
            right: top[1],
        }
    } else {
        PeakReport {
            left: top[0],
            right: top[0],
        }
    };
    Ok((result, report))
}

/// Transfer-efficiency contour levels reported by `contour_efficiency`.
pub const CONTOUR_LEVELS: [f64; 2] = [0.98, 0.99];

/// Efficiency map over the (Ω₀, T_d) plane with extracted iso-efficiency
/// contours. Contour coordinates are in display units (MHz, ns).
pub fn contour_efficiency(spec: &SweepSpec) -> Result<(SweepResult, Vec<ContourLine>)> {
    let Some(axis2) = &spec.axis2 else {
        return Err(Error::InvalidParams(
            "efficiency contour requires axis2 = td".into(),
        ));
    };
    if spec.axis1.param != SweepParam::Omega0 || axis2.param != SweepParam::Td {
        return Err(Error::InvalidParams(
            "efficiency contour requires axis1 = omega0 and axis2 = td".into(),
        ));
    }
    let result = run_sweep(spec)?;
    let xs: Vec<f64> = result
        .axis1
        .values
        .iter()
        .map(|v| SweepParam::Omega0.to_display(*v))
        .collect();
    let ys: Vec<f64> = axis2
        .values
        .iter()
        .map(|v| SweepParam::Td.to_display(*v))
        .collect();
    let mut contours = Vec::new();
    for level in CONTOUR_LEVELS {
        contours.extend(extract_closed_contours(&xs, &ys, &result.values, level));
    }
    Ok((result, contours))
}

/// Contour polylines as CSV point lists.
pub fn contours_to_csv(contours: &[ContourLine]) -> String {
    let mut out = String::from("level,polyline,vertex,omega0_mhz,td_ns\n");
    for (k, line) in contours.iter().enumerate() {
        for (v, (x, y)) in line.points.iter().enumerate() {
            out.push_str(&format!("{},{},{},{},{}\n", line.level, k, v, x, y));
        }
    }
    out
}

/// One row of the π-pulse robustness comparison.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct PiComparisonRow {
    /// Width of each π pulse (s).
    pub width: f64,
    /// Pulse area in units of π; 1.0 is the calibrated pulse.
    pub area_over_pi: f64,
    /// Final P2 of the sequential two-π transfer on the full three-level
    /// model, φ-averaged.
    pub pi_sequence_final_p2: f64,
    /// Final P2 of the adiabatic transfer when Ω₀ is mis-set by the same
    /// fractional error as the pulse area.
    pub stirap_misset_final_p2: f64,
}

/// Scan pulse widths around the calibrated π width and compare the
/// area-error sensitivity of the two transfer protocols.
pub fn compare_pi_pulse(
    omega: f64,
    widths: &[f64],
    base: &Scenario,
) -> Result<Vec<PiComparisonRow>> {
    base.validate()?;
    let rows: Vec<Result<PiComparisonRow>> = widths
        .par_iter()
        .map(|&width| {
            let seq = PiSequence::sequential(omega, width, 0.0, PiShape::Rectangular);
            let area = seq.first.area();
            let pi_scenario = Scenario {
                qutrit: base.qutrit,
                drive: DriveSchedule::pi_pair(seq)?,
                integrator: IntegratorConfig {
                    dt: None,
                    ..base.integrator
                },
            };
            let pi_final = run_averaged(&pi_scenario)?.final_populations()[2];
            // Same fractional miscalibration applied to the adiabatic drive.
            let misset = base.with_param(
                SweepParam::Omega0,
                base.drive.omega0 * (area / PI),
            );
            let stirap_final = run_averaged(&misset)?.final_populations()[2];
            Ok(PiComparisonRow {
                width,
                area_over_pi: area / PI,
                pi_sequence_final_p2: pi_final,
                stirap_misset_final_p2: stirap_final,
            })
        })
        .collect();
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        out.push(row?);
    }
    Ok(out)
}

/// Transfer probability of a single resonant rectangular pulse on an ideal
/// two-level system, simulated with the full machinery but with the upper
/// transition decoupled (λ = 0) and no decoherence. Converges to
/// sin²(Ω T / 2) at the integrator's accuracy.
pub fn ideal_two_level_transfer(omega: f64, width: f64) -> Result<f64> {
    let params = QutritParams::with_dephasing(5.555e9, 5.393e9, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)?;
    let pulse = crate::pulses::pi_pulse_schedule(
        omega,
        width,
        crate::pulses::PiTarget::Lower,
        PiShape::Rectangular,
    );
    let silent = crate::pulses::PiPulse {
        omega: 0.0,
        ..pulse
    };
    let sched = DriveSchedule::pi_pair(PiSequence {
        first: pulse,
        second: silent,
        gap: 0.0,
    })?;
    let cfg = IntegratorConfig {
        phi_samples: 1,
        ..Default::default()
    };
    let traj = evolve(&DensityMatrix::ground(), &params, &sched, &cfg)?;
    Ok(traj.final_populations()[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulses::resonant_transfer_probability;

    fn small_scenario() -> Scenario {
        Scenario {
            qutrit: QutritParams::new(5.555e9, 5.393e9, 1.45, 2.83e6, 5.10e6, 8.06e6).unwrap(),
            drive: DriveSchedule::counterintuitive(TAU * 42.8e6, 20e-9).unwrap(),
            integrator: IntegratorConfig {
                phi_samples: 2,
                ..Default::default()
            },
        }
    }

    #[test]
    fn axis_from_range_is_inclusive() {
        let axis =
            AxisSpec::from_range(SweepParam::DeltaP, -TAU * 10e6, TAU * 10e6, TAU * 5e6).unwrap();
        assert_eq!(axis.len(), 5);
        assert!((axis.values[0] + TAU * 10e6).abs() < 1.0);
        assert!((axis.values[4] - TAU * 10e6).abs() < 1.0);
        assert!(AxisSpec::from_range(SweepParam::DeltaP, 0.0, 1.0, 0.0).is_err());
        assert!(AxisSpec::from_range(SweepParam::DeltaP, 1.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn sweep_param_registry() {
        assert_eq!(SweepParam::parse("delta_p").unwrap(), SweepParam::DeltaP);
        assert_eq!(SweepParam::parse("td").unwrap(), SweepParam::Td);
        assert!(matches!(
            SweepParam::parse("bogus"),
            Err(Error::UnknownAxis(_))
        ));
    }

    #[test]
    fn with_param_td_rescales_window() {
        let s = small_scenario();
        let moved = s.with_param(SweepParam::Td, 50e-9);
        assert_eq!(moved.drive.td, 50e-9);
        assert_eq!(moved.drive.t_start, -150e-9);
        assert_eq!(moved.drive.t_end, 150e-9);
    }

    #[test]
    fn with_param_pulse_area_sets_omega0() {
        let s = small_scenario();
        let target_area = 20.0 * PI;
        let moved = s.with_param(SweepParam::PulseArea, target_area);
        let area = pulse_area(moved.drive.omega0, moved.drive.td);
        assert!(((area - target_area) / target_area).abs() < 1e-9);
    }

    #[test]
    fn fingerprint_is_stable_and_sensitive() {
        let s = small_scenario();
        assert_eq!(s.fingerprint(), s.fingerprint());
        let other = s.with_param(SweepParam::DeltaP, TAU * 1e6);
        assert_ne!(s.fingerprint(), other.fingerprint());
        assert_eq!(s.fingerprint().len(), 16);
    }

    #[test]
    fn find_peaks_on_synthetic_double_resonance() {
        let xs: Vec<f64> = (0..201).map(|i| -50.0 + i as f64 * 0.5).collect();
        let ys: Vec<f64> = xs
            .iter()
            .map(|x| {
                0.7 * (-(x + 20.0).powi(2) / 50.0).exp() + 0.65 * (-(x - 30.0).powi(2) / 8.0).exp()
            })
            .collect();
        let peaks = find_peaks(&xs, &ys);
        assert_eq!(peaks.len(), 2);
        assert!((peaks[0].location + 20.0).abs() < 0.05);
        assert!((peaks[1].location - 30.0).abs() < 0.05);
        assert!((peaks[0].value - 0.7).abs() < 1e-3);
        // The narrow right peak: FWHM = 2 sqrt(8 ln 2) vs 2 sqrt(50 ln 2).
        assert!(peaks[1].fwhm < peaks[0].fwhm);
        assert!((peaks[0].fwhm - 2.0 * (50.0 * 2.0_f64.ln()).sqrt()).abs() < 0.1);
    }

    #[test]
    fn find_peaks_returns_nothing_for_monotone_data() {
        let xs: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 0.01 * x).collect();
        assert!(find_peaks(&xs, &ys).is_empty());
    }

    #[test]
    fn detuning_sweep_rejects_wrong_axis() {
        let spec = SweepSpec {
            axis1: AxisSpec::from_range(SweepParam::Omega0, TAU * 1e6, TAU * 2e6, TAU * 1e6)
                .unwrap(),
            axis2: None,
            base: small_scenario(),
            metric: Metric::MaxP2,
        };
        assert!(sweep_detuning(&spec).is_err());
    }

    #[test]
    fn contour_requires_omega0_td_axes() {
        let spec = SweepSpec {
            axis1: AxisSpec::from_range(SweepParam::DeltaP, 0.0, TAU * 1e6, TAU * 1e6).unwrap(),
            axis2: None,
            base: small_scenario(),
            metric: Metric::FinalP2,
        };
        assert!(contour_efficiency(&spec).is_err());
    }

    #[test]
    fn sweep_csv_layout_1d() {
        let s = small_scenario();
        let spec = SweepSpec {
            axis1: AxisSpec {
                param: SweepParam::DeltaP,
                values: vec![0.0, TAU * 1e6],
            },
            axis2: None,
            base: s,
            metric: Metric::MaxP2,
        };
        let result = run_sweep(&spec).unwrap();
        let csv = result.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "delta_p_mhz,max_p2");
        assert_eq!(result.values.len(), 2);
        assert!(result.values.iter().all(|v| (0.0..=1.0).contains(v)));
        // Second row axis value displays as 1 MHz.
        let row: Vec<&str> = lines.nth(1).unwrap().split(',').collect();
        assert!((row[0].parse::<f64>().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_level_pulse_matches_closed_form() {
        let omega = TAU * 50e6;
        for area_pi in [0.5, 0.94, 1.0] {
            let width = area_pi * PI / omega;
            let simulated = ideal_two_level_transfer(omega, width).unwrap();
            let exact = resonant_transfer_probability(omega * width);
            assert!(
                (simulated - exact).abs() < 1e-9,
                "area {area_pi} pi: simulated {simulated} vs exact {exact}"
            );
        }
    }

    #[test]
    fn envelope_area_factor_matches_dense_scan() {
        assert!((envelope_area_factor() - 3.710876).abs() < 1e-4);
    }

    #[test]
    fn contours_csv_header() {
        let lines = vec![ContourLine {
            level: 0.99,
            points: vec![(1.0, 2.0), (3.0, 4.0)],
            closed: false,
        }];
        let csv = contours_to_csv(&lines);
        assert!(csv.starts_with("level,polyline,vertex,omega0_mhz,td_ns\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}

// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! Master-equation integration.
//!
//! `evolve` drives dρ/dt = -i[H(t), ρ] + L(ρ) with classical fixed-step
//! fourth-order Runge-Kutta at a single tone phase φ; `phase_average` wraps
//! it with the uniform average over φ that models two uncorrelated microwave
//! tones. `oracle_evolve` is an independent piecewise-constant
//! matrix-exponential propagator used to cross-check the integrator, and
//! `convergence_check` quantifies step-size sensitivity by halving dt.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    add_scaled3, apply9, expm9, mul3, unvectorize, vectorize, zeros3, zeros9, C64, Mat3, Mat9,
};
use crate::qutrit::{
    build_hamiltonian, dissipator_raw, DensityMatrix, DissipatorRates, DriveSchedule, QutritParams,
};

/// Population tolerance band; leaving it means the step size cannot resolve
/// the fastest scale in the problem.
const POPULATION_BAND: (f64, f64) = (-1e-6, 1.0 + 1e-6);

/// Fixed-step integrator settings.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    /// Step size (s). `None` derives one from the schedule: T_d/2000,
    /// shrunk further if needed to keep at least 64 steps per period of the
    /// fastest frequency in play (tone difference δ, peak Rabi, detunings).
    pub dt: Option<f64>,
    /// Record every this many steps (endpoints are always recorded).
    pub record_every: usize,
    /// Number of φ samples for `phase_average`.
    pub phi_samples: usize,
    /// Re-Hermitize and rescale the trace after every step. Off by default;
    /// invariant drift is the health metric and stays far below tolerance on
    /// sub-microsecond windows.
    pub renormalize: bool,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            dt: None,
            record_every: 10,
            phi_samples: 36,
            renormalize: false,
        }
    }
}

impl IntegratorConfig {
    /// Boundary validation: an explicit step must satisfy dt <= T_d/500.
    /// (`evolve` itself accepts any positive step so that step-size probes
    /// like `convergence_check` can exercise deliberately coarse grids.)
    pub fn validate(&self, sched: &DriveSchedule) -> Result<()> {
        if let Some(dt) = self.dt {
            if !(dt > 0.0) {
                return Err(Error::InvalidParams(format!("dt must be > 0, got {dt}")));
            }
            if dt > sched.td / 500.0 {
                return Err(Error::InvalidParams(format!(
                    "dt = {} s is too coarse for T_d = {} s (need dt <= T_d/500)",
                    dt, sched.td
                )));
            }
        }
        if self.phi_samples == 0 {
            return Err(Error::InvalidParams("phi_samples must be >= 1".into()));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParams("record_every must be >= 1".into()));
        }
        Ok(())
    }

    /// The step the integrator will actually target for this run.
    pub fn resolve_dt(&self, params: &QutritParams, sched: &DriveSchedule) -> f64 {
        self.dt.unwrap_or_else(|| default_dt(params, sched))
    }
}

fn default_dt(params: &QutritParams, sched: &DriveSchedule) -> f64 {
    let mut dt = sched.td / 2000.0;
    let fastest = (sched.delta(params).abs() / TAU)
        .max(sched.omega0 / TAU)
        .max((sched.delta_p.abs() + sched.delta_s.abs()) / TAU);
    if fastest > 0.0 {
        dt = dt.min(1.0 / (64.0 * fastest));
    }
    dt
}

/// Time-stamped integration record.
#[derive(Clone, Debug)]
pub struct Trajectory {
    /// Sample times (s), strictly increasing, endpoints included.
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    /// (P0, P1, P2) at each sample.
    pub populations: Vec<[f64; 3]>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &DensityMatrix {
        self.states.last().expect("trajectory is never empty")
    }

    pub fn final_populations(&self) -> [f64; 3] {
        *self.populations.last().expect("trajectory is never empty")
    }

    /// (time, value) of the maximum of P_level over the whole record.
    pub fn max_population(&self, level: usize) -> (f64, f64) {
        self.max_population_after(level, f64::NEG_INFINITY)
    }

    /// (time, value) of the maximum of P_level over samples with t > t_min.
    pub fn max_population_after(&self, level: usize, t_min: f64) -> (f64, f64) {
        let mut best = (f64::NAN, f64::NEG_INFINITY);
        for (t, p) in self.times.iter().zip(&self.populations) {
            if *t > t_min && p[level] > best.1 {
                best = (*t, p[level]);
            }
        }
        best
    }

    /// Verify the density-matrix invariants on every recorded sample.
    pub fn check_invariants(&self) -> Result<()> {
        if self.states.len() != self.times.len() || self.populations.len() != self.times.len() {
            return Err(Error::InvariantViolation {
                t_ns: f64::NAN,
                what: "length mismatch between times, states and populations".into(),
            });
        }
        for w in self.times.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvariantViolation {
                    t_ns: w[1] * 1e9,
                    what: "times not strictly increasing".into(),
                });
            }
        }
        for ((t, state), pops) in self.times.iter().zip(&self.states).zip(&self.populations) {
            let t_ns = t * 1e9;
            let tr = state.trace();
            if (tr.re - 1.0).abs() > DensityMatrix::TRACE_TOL || tr.im.abs() > DensityMatrix::TRACE_TOL
            {
                return Err(Error::InvariantViolation {
                    t_ns,
                    what: format!("trace drift |Tr rho - 1| = {:.3e}", (tr.re - 1.0).abs()),
                });
            }
            let herm = state.hermiticity_defect();
            if herm > 1e-10 {
                return Err(Error::InvariantViolation {
                    t_ns,
                    what: format!("hermiticity defect {herm:.3e}"),
                });
            }
            let lambda_min = state.min_eigenvalue();
            if lambda_min < DensityMatrix::POSITIVITY_TOL {
                return Err(Error::InvariantViolation {
                    t_ns,
                    what: format!("negative eigenvalue {lambda_min:.3e}"),
                });
            }
            let psum: f64 = pops.iter().sum();
            if (psum - 1.0).abs() > 1e-9 {
                return Err(Error::InvariantViolation {
                    t_ns,
                    what: format!("population sum {psum} != 1"),
                });
            }
        }
        Ok(())
    }

    /// `t_ns,P0,P1,P2` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t_ns,P0,P1,P2\n");
        for (t, p) in self.times.iter().zip(&self.populations) {
            out.push_str(&format!("{},{},{},{}\n", t * 1e9, p[0], p[1], p[2]));
        }
        out
    }

    /// Full-state rows with all nine complex components.
    pub fn to_full_csv(&self) -> String {
        let mut out = String::from("t_ns");
        for i in 0..3 {
            for j in 0..3 {
                out.push_str(&format!(",re_{i}{j},im_{i}{j}"));
            }
        }
        out.push('\n');
        for (t, state) in self.times.iter().zip(&self.states) {
            out.push_str(&format!("{}", t * 1e9));
            for i in 0..3 {
                for j in 0..3 {
                    let e = state.element(i, j);
                    out.push_str(&format!(",{},{}", e.re, e.im));
                }
            }
            out.push('\n');
        }
        out
    }
}

#[inline]
fn master_rhs(h: &Mat3, rho: &Mat3, rates: &DissipatorRates) -> Mat3 {
    let hr = mul3(h, rho);
    let rh = mul3(rho, h);
    let mut out = dissipator_raw(rho, rates);
    for i in 0..3 {
        for j in 0..3 {
            let z = hr[i][j] - rh[i][j];
            // -i z
            out[i][j] += C64::new(z.im, -z.re);
        }
    }
    out
}

/// Integrate the master equation at the single fixed φ carried by `sched`.
pub fn evolve(
    rho0: &DensityMatrix,
    params: &QutritParams,
    sched: &DriveSchedule,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    let span = sched.t_end - sched.t_start;
    let dt = cfg.resolve_dt(params, sched);
    if !(dt > 0.0) {
        return Err(Error::InvalidParams(format!("dt must be > 0, got {dt}")));
    }
    // The relative backoff keeps an exactly-divisible span from picking up a
    // spurious extra step through rounding, so pulse edges that are designed
    // to sit on step boundaries actually do.
    let n_steps = (((span / dt) * (1.0 - 1e-12)).ceil() as usize).max(1);
    evolve_n(rho0, params, sched, n_steps, cfg.record_every.max(1), cfg.renormalize)
}

/// Fixed number of steps over the schedule window; shared by `evolve` and
/// the step-halving check so the two grids nest exactly.
pub(crate) fn evolve_n(
    rho0: &DensityMatrix,
    params: &QutritParams,
    sched: &DriveSchedule,
    n_steps: usize,
    record_every: usize,
    renormalize: bool,
) -> Result<Trajectory> {
    let span = sched.t_end - sched.t_start;
    let time_at = |i: usize| sched.t_start + span * (i as f64 / n_steps as f64);
    let rates = DissipatorRates::from_params(params);

    let capacity = n_steps / record_every + 2;
    let mut times = Vec::with_capacity(capacity);
    let mut states = Vec::with_capacity(capacity);

    let mut rho = *rho0.matrix();
    for i in 0..n_steps {
        if i % record_every == 0 {
            times.push(time_at(i));
            states.push(DensityMatrix::from_raw(rho));
        }
        let t0 = time_at(i);
        let t1 = time_at(i + 1);
        let h = t1 - t0;
        let half = 0.5 * h;

        // Endpoint stages sample the drive through one-sided limits into the
        // step interior. For smooth envelopes the shift is far below the
        // truncation error; for rectangular pulses whose edges sit on step
        // boundaries it keeps every stage on the correct side of the edge.
        let nudge = 1e-9 * h;
        let h_a = build_hamiltonian(t0 + nudge, params, sched);
        let h_b = build_hamiltonian(t0 + half, params, sched);
        let h_c = build_hamiltonian(t1 - nudge, params, sched);

        let k1 = master_rhs(&h_a, &rho, &rates);
        let k2 = master_rhs(&h_b, &add_scaled3(&rho, half, &k1), &rates);
        let k3 = master_rhs(&h_b, &add_scaled3(&rho, half, &k2), &rates);
        let k4 = master_rhs(&h_c, &add_scaled3(&rho, h, &k3), &rates);

        let sixth = h / 6.0;
        for r in 0..3 {
            for c in 0..3 {
                rho[r][c] += sixth * (k1[r][c] + 2.0 * (k2[r][c] + k3[r][c]) + k4[r][c]);
            }
        }

        if renormalize {
            rehermitize(&mut rho);
        }

        for level in 0..3 {
            let p = rho[level][level].re;
            if !(p >= POPULATION_BAND.0 && p <= POPULATION_BAND.1) {
                return Err(Error::StepInstability {
                    t_ns: t1 * 1e9,
                    population: p,
                });
            }
        }
    }
    times.push(time_at(n_steps));
    states.push(DensityMatrix::from_raw(rho));

    let populations = states.iter().map(|s| s.populations()).collect();
    Ok(Trajectory {
        times,
        states,
        populations,
    })
}

fn rehermitize(rho: &mut Mat3) {
    let mut sym = zeros3();
    for i in 0..3 {
        for j in 0..3 {
            sym[i][j] = 0.5 * (rho[i][j] + rho[j][i].conj());
        }
    }
    let tr = sym[0][0].re + sym[1][1].re + sym[2][2].re;
    for row in sym.iter_mut() {
        for x in row.iter_mut() {
            *x /= tr;
        }
    }
    *rho = sym;
}

/// Average the evolution over the uncorrelated tone phase, φ_k = 2πk/N.
///
/// The uniform rectangle rule is exact for every Fourier mode of the
/// 2π-periodic integrand up to harmonic N-1, so moderate N converges fast.
/// States are averaged pointwise in time in fixed k order, which keeps the
/// result bit-identical regardless of how the φ runs are scheduled.
pub fn phase_average(
    rho0: &DensityMatrix,
    params: &QutritParams,
    sched_base: &DriveSchedule,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    let n = cfg.phi_samples;
    if n == 0 {
        return Err(Error::InvalidParams("phi_samples must be >= 1".into()));
    }
    let runs: Vec<Result<Trajectory>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let phi = TAU * k as f64 / n as f64;
            evolve(rho0, params, &sched_base.with_phi(phi), cfg).map_err(|e| {
                Error::PhaseSample {
                    index: k,
                    phi,
                    source: Box::new(e),
                }
            })
        })
        .collect();

    let mut trajectories = Vec::with_capacity(n);
    for run in runs {
        trajectories.push(run?);
    }

    let template = &trajectories[0];
    let samples = template.len();
    let weight = 1.0 / n as f64;
    let mut states = Vec::with_capacity(samples);
    for idx in 0..samples {
        let mut acc = zeros3();
        for traj in &trajectories {
            debug_assert_eq!(traj.len(), samples);
            let m = traj.states[idx].matrix();
            for i in 0..3 {
                for j in 0..3 {
                    acc[i][j] += m[i][j];
                }
            }
        }
        for row in acc.iter_mut() {
            for x in row.iter_mut() {
                *x *= weight;
            }
        }
        states.push(DensityMatrix::from_raw(acc));
    }
    let populations = states.iter().map(|s| s.populations()).collect();
    Ok(Trajectory {
        times: template.times.clone(),
        states,
        populations,
    })
}

/// Step-halving report.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    /// Max over recorded times of ½‖ρ_dt - ρ_dt/2‖₁.
    pub dt_halved_distance: f64,
    /// distance < 1e-6.
    pub ok: bool,
    /// The coarse step that was probed (s).
    pub dt: f64,
}

pub const CONVERGENCE_TOL: f64 = 1e-6;

/// Re-run with half the step and report the largest trace distance between
/// the two records. A step so coarse that a probe run trips the population
/// band is reported as non-converged rather than as an error.
pub fn convergence_check(
    rho0: &DensityMatrix,
    params: &QutritParams,
    sched: &DriveSchedule,
    cfg: &IntegratorConfig,
) -> Result<ConvergenceReport> {
    let span = sched.t_end - sched.t_start;
    let dt = cfg.resolve_dt(params, sched);
    let n = (((span / dt) * (1.0 - 1e-12)).ceil() as usize).max(1);
    let record = cfg.record_every.max(1);
    let failed = |dt_probed: f64| ConvergenceReport {
        dt_halved_distance: f64::INFINITY,
        ok: false,
        dt: dt_probed,
    };
    let coarse = match evolve_n(rho0, params, sched, n, record, cfg.renormalize) {
        Ok(traj) => traj,
        Err(Error::StepInstability { .. }) => return Ok(failed(span / n as f64)),
        Err(e) => return Err(e),
    };
    let fine = match evolve_n(rho0, params, sched, 2 * n, 2 * record, cfg.renormalize) {
        Ok(traj) => traj,
        Err(Error::StepInstability { .. }) => return Ok(failed(span / n as f64)),
        Err(e) => return Err(e),
    };
    debug_assert_eq!(coarse.len(), fine.len());
    let mut worst = 0.0_f64;
    for (a, b) in coarse.states.iter().zip(&fine.states) {
        worst = worst.max(a.trace_distance(b));
    }
    Ok(ConvergenceReport {
        dt_halved_distance: worst,
        ok: worst < CONVERGENCE_TOL,
        dt: span / n as f64,
    })
}

/// Ground-truth propagator: split the window into `n_steps` sub-intervals,
/// freeze the Hamiltonian at each midpoint, and apply the exact matrix
/// exponential of the full 9×9 Liouville superoperator to the vectorized
/// state. Second-order accurate in the step but free of any Runge-Kutta
/// machinery, which is what makes it a useful cross-check.
pub fn oracle_evolve(
    rho0: &DensityMatrix,
    params: &QutritParams,
    sched: &DriveSchedule,
    n_steps: usize,
) -> DensityMatrix {
    let span = sched.t_end - sched.t_start;
    if span == 0.0 || n_steps == 0 {
        return *rho0;
    }
    let dt = span / n_steps as f64;
    let dissip = dissipator_superoperator(params);
    let mut v = vectorize(rho0.matrix());
    for i in 0..n_steps {
        let tm = sched.t_start + span * ((i as f64 + 0.5) / n_steps as f64);
        let h = build_hamiltonian(tm, params, sched);
        let mut gen = dissip;
        add_hamiltonian_superoperator(&mut gen, &h);
        for row in gen.iter_mut() {
            for x in row.iter_mut() {
                *x *= dt;
            }
        }
        v = apply9(&expm9(&gen), &v);
    }
    DensityMatrix::from_raw(unvectorize(&v))
}

/// L(ρ) as a 9×9 matrix on the row-major vectorization v[3i+j] = ρ_ij.
fn dissipator_superoperator(params: &QutritParams) -> Mat9 {
    let r = DissipatorRates::from_params(params);
    let idx = |i: usize, j: usize| 3 * i + j;
    let mut a = zeros9();
    a[idx(0, 0)][idx(1, 1)] += C64::new(r.gamma10, 0.0);
    a[idx(1, 1)][idx(1, 1)] -= C64::new(r.gamma10, 0.0);
    a[idx(1, 1)][idx(2, 2)] += C64::new(r.gamma21, 0.0);
    a[idx(2, 2)][idx(2, 2)] -= C64::new(r.gamma21, 0.0);
    for (i, j, c) in [
        (0, 1, r.c01),
        (1, 0, r.c01),
        (0, 2, r.c02),
        (2, 0, r.c02),
        (1, 2, r.c12),
        (2, 1, r.c12),
    ] {
        a[idx(i, j)][idx(i, j)] -= C64::new(c, 0.0);
    }
    a
}

/// Add -i (H ρ - ρ H) to the superoperator.
fn add_hamiltonian_superoperator(a: &mut Mat9, h: &Mat3) {
    let idx = |i: usize, j: usize| 3 * i + j;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                // -i H_ik rho_kj
                let hik = h[i][k];
                a[idx(i, j)][idx(k, j)] += C64::new(hik.im, -hik.re);
                // +i rho_ik H_kj
                let hkj = h[k][j];
                a[idx(i, j)][idx(i, k)] += C64::new(-hkj.im, hkj.re);
            }
        }
    }
}

/// Convenience wrapper for the acceptance checks: trace distance between
/// the Runge-Kutta final state and the oracle final state.
pub fn rk4_vs_oracle_distance(
    rho0: &DensityMatrix,
    params: &QutritParams,
    sched: &DriveSchedule,
    cfg: &IntegratorConfig,
    oracle_steps: usize,
) -> Result<f64> {
    let rk = evolve(rho0, params, sched, cfg)?;
    let oracle = oracle_evolve(rho0, params, sched, oracle_steps);
    Ok(rk.final_state().trace_distance(&oracle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qutrit::PulseOrder;

    const TAU_F: f64 = std::f64::consts::TAU;

    fn sample_params() -> QutritParams {
        QutritParams::new(5.555e9, 5.393e9, 1.45, 2.83e6, 5.10e6, 8.06e6).unwrap()
    }

    fn decay_schedule(duration: f64) -> DriveSchedule {
        DriveSchedule::counterintuitive(0.0, 100e-9)
            .unwrap()
            .with_window(-duration / 2.0, duration / 2.0)
    }

    #[test]
    fn free_decay_from_level_one_matches_exponential() {
        let params = sample_params();
        let tau = 1.0 / params.gamma10;
        let sched = decay_schedule(tau);
        let cfg = IntegratorConfig::default();
        let traj = evolve(&DensityMatrix::pure(1), &params, &sched, &cfg).unwrap();
        let p1 = traj.final_populations()[1];
        assert!(
            (p1 - (-1.0_f64).exp()).abs() < 1e-4,
            "P1(1/Gamma10) = {p1}, expected 1/e"
        );
        // And the released population lands in the ground state minus what
        // level 1 still holds.
        let p = traj.final_populations();
        assert!((p[0] + p[1] - 1.0).abs() < 1e-9);
        traj.check_invariants().unwrap();
    }

    #[test]
    fn ground_state_is_stationary_without_drive() {
        let params = sample_params();
        let sched = decay_schedule(300e-9);
        let traj = evolve(
            &DensityMatrix::ground(),
            &params,
            &sched,
            &IntegratorConfig::default(),
        )
        .unwrap();
        for p in &traj.populations {
            assert!((p[0] - 1.0).abs() < 1e-12);
            assert!(p[1].abs() < 1e-12 && p[2].abs() < 1e-12);
        }
    }

    #[test]
    fn endpoints_are_recorded() {
        let params = sample_params();
        let sched = decay_schedule(100e-9);
        let cfg = IntegratorConfig {
            record_every: 7,
            ..Default::default()
        };
        let traj = evolve(&DensityMatrix::ground(), &params, &sched, &cfg).unwrap();
        assert_eq!(traj.times[0], sched.t_start);
        assert_eq!(*traj.times.last().unwrap(), sched.t_end);
        traj.check_invariants().unwrap();
    }

    #[test]
    fn single_phase_average_equals_plain_evolve() {
        let params = sample_params();
        let sched = DriveSchedule::counterintuitive(TAU_F * 42.8e6, 40e-9).unwrap();
        let cfg = IntegratorConfig {
            phi_samples: 1,
            ..Default::default()
        };
        let direct = evolve(&DensityMatrix::ground(), &params, &sched, &cfg).unwrap();
        let averaged = phase_average(&DensityMatrix::ground(), &params, &sched, &cfg).unwrap();
        assert_eq!(direct.len(), averaged.len());
        for (a, b) in direct.states.iter().zip(&averaged.states) {
            assert!(a.trace_distance(b) < 1e-15);
        }
    }

    #[test]
    fn phase_average_without_drive_is_phase_independent() {
        let params = sample_params();
        let sched = decay_schedule(200e-9);
        let cfg = IntegratorConfig {
            phi_samples: 8,
            ..Default::default()
        };
        let averaged = phase_average(&DensityMatrix::pure(1), &params, &sched, &cfg).unwrap();
        let single = evolve(&DensityMatrix::pure(1), &params, &sched, &cfg).unwrap();
        for (a, b) in averaged.states.iter().zip(&single.states) {
            assert!(a.trace_distance(b) < 1e-14);
        }
    }

    #[test]
    fn oversized_step_reports_instability() {
        let params = sample_params();
        let sched = DriveSchedule::counterintuitive(TAU_F * 500e6, 100e-9).unwrap();
        let cfg = IntegratorConfig {
            dt: Some(5e-9),
            ..Default::default()
        };
        let err = evolve(&DensityMatrix::ground(), &params, &sched, &cfg).unwrap_err();
        assert!(matches!(err, Error::StepInstability { .. }));
    }

    #[test]
    fn explicit_coarse_dt_fails_config_validation() {
        let sched = DriveSchedule::counterintuitive(TAU_F * 42.8e6, 100e-9).unwrap();
        let cfg = IntegratorConfig {
            dt: Some(1e-9), // T_d/100, coarser than the T_d/500 bound
            ..Default::default()
        };
        assert!(cfg.validate(&sched).is_err());
        let fine = IntegratorConfig {
            dt: Some(50e-12),
            ..Default::default()
        };
        assert!(fine.validate(&sched).is_ok());
    }

    #[test]
    fn convergence_check_trivial_for_pure_decay() {
        let params = sample_params();
        let sched = decay_schedule(200e-9);
        let report = convergence_check(
            &DensityMatrix::pure(1),
            &params,
            &sched,
            &IntegratorConfig::default(),
        )
        .unwrap();
        assert!(report.ok);
        assert!(report.dt_halved_distance < 1e-12);
    }

    #[test]
    fn convergence_check_flags_a_deliberately_coarse_step() {
        let params = sample_params();
        let sched = DriveSchedule::counterintuitive(TAU_F * 42.8e6, 100e-9).unwrap();
        let cfg = IntegratorConfig {
            dt: Some(5e-9), // T_d/20
            ..Default::default()
        };
        let report =
            convergence_check(&DensityMatrix::ground(), &params, &sched, &cfg).unwrap();
        assert!(!report.ok, "distance = {}", report.dt_halved_distance);
    }

    #[test]
    fn oracle_identity_for_zero_span() {
        let params = sample_params();
        let mut sched = DriveSchedule::counterintuitive(TAU_F * 42.8e6, 100e-9).unwrap();
        sched.t_start = 0.0;
        sched.t_end = 0.0;
        let rho = DensityMatrix::pure(1);
        let out = oracle_evolve(&rho, &params, &sched, 100);
        assert_eq!(out.matrix(), rho.matrix());
    }

    #[test]
    fn oracle_free_decay_is_nearly_exact() {
        let params = sample_params();
        let tau = 1.0 / params.gamma10;
        let sched = decay_schedule(tau);
        let out = oracle_evolve(&DensityMatrix::pure(1), &params, &sched, 20_000);
        let p1 = out.populations()[1];
        assert!(
            (p1 - (-1.0_f64).exp()).abs() < 1e-6,
            "oracle P1 = {p1}, expected 1/e"
        );
    }

    #[test]
    fn rk4_and_oracle_agree_on_a_short_driven_window() {
        let params = sample_params();
        let sched = DriveSchedule::counterintuitive(TAU_F * 42.8e6, 20e-9).unwrap();
        let cfg = IntegratorConfig::default();
        let d = rk4_vs_oracle_distance(&DensityMatrix::ground(), &params, &sched, &cfg, 30_000)
            .unwrap();
        assert!(d < 1e-6, "trace distance = {d:.3e}");
    }

    #[test]
    fn renormalize_keeps_states_valid() {
        let params = sample_params();
        let sched = DriveSchedule::counterintuitive(TAU_F * 42.8e6, 40e-9).unwrap();
        let cfg = IntegratorConfig {
            renormalize: true,
            ..Default::default()
        };
        let traj = evolve(&DensityMatrix::ground(), &params, &sched, &cfg).unwrap();
        traj.check_invariants().unwrap();
        assert!(matches!(sched.order, PulseOrder::Counterintuitive));
    }

    #[test]
    fn trajectory_csv_headers() {
        let params = sample_params();
        let sched = decay_schedule(50e-9);
        let traj = evolve(
            &DensityMatrix::ground(),
            &params,
            &sched,
            &IntegratorConfig::default(),
        )
        .unwrap();
        assert!(traj.to_csv().starts_with("t_ns,P0,P1,P2\n"));
        assert!(traj
            .to_full_csv()
            .starts_with("t_ns,re_00,im_00,re_01,im_01"));
    }
}

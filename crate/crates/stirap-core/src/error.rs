// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A domain type was constructed with values violating its invariants.
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    /// Both drive envelopes vanish, so the mixing angle is undefined.
    #[error("pump and Stokes amplitudes are both zero; dark state undefined")]
    DegenerateDrive,

    /// A population left `[-1e-6, 1 + 1e-6]` during integration, which means
    /// the step size is too large for the fastest scale in the problem.
    #[error(
        "integration unstable at t = {t_ns:.3} ns (population = {population:.6e}); \
         reduce the time step"
    )]
    StepInstability { t_ns: f64, population: f64 },

    /// One of the phase samples of an average failed.
    #[error("phase sample {index} (phi = {phi:.6} rad) failed: {source}")]
    PhaseSample {
        index: usize,
        phi: f64,
        #[source]
        source: Box<Error>,
    },

    /// Measurement pulses A and B are not distinct enough to invert.
    #[error("singular tomography calibration (|D| = {determinant:.3e} <= 1e-6)")]
    SingularCalibration { determinant: f64 },

    /// A population vector fed to the tomography forward model must lie on
    /// the probability simplex.
    #[error("population vector not normalized (sum = {sum:.12}) or outside [0, 1]")]
    InvalidPopulations { sum: f64 },

    /// A detuning sweep produced a monotone curve, which means the scan
    /// window missed every resonance.
    #[error("no interior peak found: the sweep curve is monotone over the scanned range")]
    NoPeakFound,

    /// Sweep axis name outside the registry.
    #[error("unknown sweep parameter '{0}' (expected delta_p, delta_s, omega0, td, pulse_area or phi)")]
    UnknownAxis(String),

    /// A recorded state violated a density-matrix invariant.
    #[error("state invariant violated at t = {t_ns:.3} ns: {what}")]
    InvariantViolation { t_ns: f64, what: String },
}

pub type Result<T> = std::result::Result<T, Error>;

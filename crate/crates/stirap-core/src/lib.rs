// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! Coherent population transfer in a ladder-type superconducting qutrit.
//!
//! This crate simulates adiabatic 0→2 transfer through the dark state of a
//! three-level ladder system driven by a counterintuitive Stokes/pump pulse
//! pair, by integrating the master equation
//!
//! ```text
//!   dρ/dt = -i [H(t), ρ] + L(ρ)
//! ```
//!
//! in the double-rotating frame, with relaxation and pure dephasing in L and
//! a uniform average over the relative phase of the two (uncorrelated) drive
//! tones. On top of the integrator sit the figure-level studies: time-domain
//! transfer curves, detuning-resonance scans, efficiency contours in the
//! (Ω₀, T_d) plane, and a robustness comparison against sequential resonant
//! π pulses. A linear-inversion readout model maps measured tunneling
//! probabilities to level populations and back.
//!
//! Module map:
//! - [`qutrit`]: domain types, Hamiltonians, dissipator, dark state;
//! - [`pulses`]: envelope family, pulse areas, adiabaticity conditions;
//! - [`dynamics`]: Runge-Kutta integration, φ averaging, the
//!   matrix-exponential oracle and step-halving checks;
//! - [`tomography`]: tunneling-probability readout inversion;
//! - [`experiments`]: sweep harness, peak analysis, contour extraction;
//! - [`presets`]: the built-in named parameter sets used by the CLI.

pub mod contour;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod presets;
pub mod pulses;
pub mod qutrit;
pub mod tomography;

pub use error::{Error, Result};
pub use qutrit::{DensityMatrix, DriveSchedule, QutritParams};

// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! Domain types for the ladder-type (Ξ) three-level system and the pieces of
//! its master equation: the rotating-frame Hamiltonian, the relaxation and
//! dephasing dissipator, and the dark-state analysis of the reduced Raman
//! Hamiltonian.
//!
//! Unit conventions: transition frequencies `f10`, `f21` are ordinary
//! frequencies in Hz; everything else that oscillates (Rabi rates, detunings,
//! Hamiltonian entries) is in angular frequency rad/s, and decay rates are
//! 1/s. Conversions from the MHz/ns world happen at the config boundary, not
//! here.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    self, eigvals_hermitian3, hermiticity_defect, trace3, zeros3, C64, Mat3,
};
use crate::pulses::{self, PiSequence};

/// 3×3 Hermitian, unit-trace state of the qutrit.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    m: Mat3,
}

impl DensityMatrix {
    pub const HERMITICITY_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-9;
    pub const POSITIVITY_TOL: f64 = -1e-8;

    /// Pure state |level⟩⟨level|.
    pub fn pure(level: usize) -> Self {
        assert!(level < 3, "qutrit level must be 0, 1 or 2");
        let mut m = zeros3();
        m[level][level] = linalg::C_ONE;
        DensityMatrix { m }
    }

    /// Ground state |0⟩⟨0|, the usual initial condition.
    pub fn ground() -> Self {
        Self::pure(0)
    }

    /// Validate and wrap an arbitrary matrix.
    pub fn from_matrix(m: Mat3) -> Result<Self> {
        let defect = hermiticity_defect(&m);
        if defect > Self::HERMITICITY_TOL {
            return Err(Error::InvalidParams(format!(
                "density matrix not Hermitian (defect {defect:.3e})"
            )));
        }
        let tr = trace3(&m);
        if (tr.re - 1.0).abs() > Self::TRACE_TOL || tr.im.abs() > Self::TRACE_TOL {
            return Err(Error::InvalidParams(format!(
                "density matrix trace {} + {}i != 1",
                tr.re, tr.im
            )));
        }
        Ok(DensityMatrix { m })
    }

    /// Wrap a matrix produced by the integrator without re-validating.
    pub(crate) fn from_raw(m: Mat3) -> Self {
        DensityMatrix { m }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn element(&self, i: usize, j: usize) -> C64 {
        self.m[i][j]
    }

    /// Diagonal populations (P0, P1, P2).
    pub fn populations(&self) -> [f64; 3] {
        [self.m[0][0].re, self.m[1][1].re, self.m[2][2].re]
    }

    pub fn trace(&self) -> C64 {
        trace3(&self.m)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.m)
    }

    /// Smallest eigenvalue; slightly negative values bound the integrator
    /// error, anything below `POSITIVITY_TOL` means trouble.
    pub fn min_eigenvalue(&self) -> f64 {
        eigvals_hermitian3(&self.m)[0]
    }

    /// ½ ‖ρ - σ‖₁.
    pub fn trace_distance(&self, other: &Self) -> f64 {
        linalg::trace_distance(&self.m, &other.m)
    }
}

/// Static parameters of the qutrit: level spacings, ladder coupling ratio,
/// and the measured decoherence rates entering the dissipator.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QutritParams {
    /// |0⟩→|1⟩ transition frequency (Hz).
    pub f10: f64,
    /// |1⟩→|2⟩ transition frequency (Hz).
    pub f21: f64,
    /// Ratio of the 1-2 to the 0-1 drive coupling; √2 for an ideal weakly
    /// anharmonic ladder, ≈1.45 for the measured phase-circuit sample.
    /// Zero decouples the upper transition entirely (useful as a two-level
    /// reference).
    pub lambda: f64,
    /// Relaxation rate Γ₁₀ (1/s).
    pub gamma10: f64,
    /// Relaxation rate Γ₂₁ (1/s).
    pub gamma21: f64,
    /// Pure dephasing rate γᵠ₁₀ (1/s).
    pub gphi10: f64,
    /// Pure dephasing rate γᵠ₂₀ (1/s); defaults to 2 γᵠ₁₀.
    pub gphi20: f64,
    /// Pure dephasing rate γᵠ₂₁ (1/s); defaults to γᵠ₁₀.
    pub gphi21: f64,
}

/// Drive coupling ratio of an ideal weakly anharmonic ladder.
pub const IDEAL_LADDER_LAMBDA: f64 = std::f64::consts::SQRT_2;

impl QutritParams {
    /// Build with the default dephasing hierarchy γᵠ₂₀ = 2 γᵠ₁₀ and
    /// γᵠ₂₁ = γᵠ₁₀.
    pub fn new(
        f10: f64,
        f21: f64,
        lambda: f64,
        gamma10: f64,
        gamma21: f64,
        gphi10: f64,
    ) -> Result<Self> {
        Self::with_dephasing(
            f10,
            f21,
            lambda,
            gamma10,
            gamma21,
            gphi10,
            2.0 * gphi10,
            gphi10,
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub fn with_dephasing(
        f10: f64,
        f21: f64,
        lambda: f64,
        gamma10: f64,
        gamma21: f64,
        gphi10: f64,
        gphi20: f64,
        gphi21: f64,
    ) -> Result<Self> {
        let params = QutritParams {
            f10,
            f21,
            lambda,
            gamma10,
            gamma21,
            gphi10,
            gphi20,
            gphi21,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.f10 > self.f21 && self.f21 > 0.0) {
            return Err(Error::InvalidParams(format!(
                "need f10 > f21 > 0, got f10 = {} Hz, f21 = {} Hz",
                self.f10, self.f21
            )));
        }
        for (name, rate) in [
            ("gamma10", self.gamma10),
            ("gamma21", self.gamma21),
            ("gphi10", self.gphi10),
            ("gphi20", self.gphi20),
            ("gphi21", self.gphi21),
        ] {
            if !(rate >= 0.0) {
                return Err(Error::InvalidParams(format!(
                    "rate {name} must be >= 0, got {rate}"
                )));
            }
        }
        if !(self.lambda >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "lambda must be >= 0, got {}",
                self.lambda
            )));
        }
        Ok(())
    }

    /// ω₁₀ = 2π f₁₀ (rad/s).
    pub fn omega10(&self) -> f64 {
        TAU * self.f10
    }

    /// ω₂₁ = 2π f₂₁ (rad/s).
    pub fn omega21(&self) -> f64 {
        TAU * self.f21
    }

    /// Relative anharmonicity α = (f10 - f21) / f10, in (0, 1).
    pub fn anharmonicity(&self) -> f64 {
        (self.f10 - self.f21) / self.f10
    }
}

/// Which envelope family the schedule plays.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PulseOrder {
    /// Stokes precedes pump (the adiabatic-transfer ordering).
    Counterintuitive,
    /// Pump precedes Stokes (time mirror of the above).
    PumpFirst,
    /// Two sequential resonant π pulses.
    PiPulsePair(PiSequence),
}

/// Drive configuration: envelope scale and timescale, the two tone detunings,
/// the relative tone phase, and the simulated window.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriveSchedule {
    /// Peak Rabi scale Ω₀ of the adiabatic pair (rad/s). Ignored by
    /// π-pulse-pair schedules, whose amplitudes live in the sequence.
    pub omega0: f64,
    /// Pulse timescale T_d (s); the π-pair uses its pulse width here.
    pub td: f64,
    /// Pump detuning Δ_p = ω₁₀ - ω_p (rad/s).
    pub delta_p: f64,
    /// Stokes detuning Δ_s = ω₂₁ - ω_s (rad/s).
    pub delta_s: f64,
    /// Relative phase φ between the two tones (rad).
    pub phi: f64,
    /// Window start (s), < 0.
    pub t_start: f64,
    /// Window end (s), > 0.
    pub t_end: f64,
    pub order: PulseOrder,
}

impl DriveSchedule {
    /// Counterintuitive pair with the default window [-3 T_d, +3 T_d] and
    /// zero detunings.
    pub fn counterintuitive(omega0: f64, td: f64) -> Result<Self> {
        let sched = DriveSchedule {
            omega0,
            td,
            delta_p: 0.0,
            delta_s: 0.0,
            phi: 0.0,
            t_start: -pulses::WINDOW_TIMESCALES * td,
            t_end: pulses::WINDOW_TIMESCALES * td,
            order: PulseOrder::Counterintuitive,
        };
        sched.validate()?;
        Ok(sched)
    }

    /// Sequential π-pulse schedule; the window comes from the sequence.
    pub fn pi_pair(seq: PiSequence) -> Result<Self> {
        let (t_start, t_end) = seq.window();
        let width = seq.first.width.max(seq.second.width);
        let sched = DriveSchedule {
            omega0: seq.first.omega.max(seq.second.omega),
            td: width,
            delta_p: 0.0,
            delta_s: 0.0,
            phi: 0.0,
            t_start,
            t_end,
            order: PulseOrder::PiPulsePair(seq),
        };
        sched.validate()?;
        Ok(sched)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.td > 0.0) {
            return Err(Error::InvalidParams(format!(
                "pulse timescale must be > 0, got {}",
                self.td
            )));
        }
        if !(self.omega0 >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "omega0 must be >= 0, got {}",
                self.omega0
            )));
        }
        if !(self.t_start < 0.0 && self.t_end > 0.0) {
            return Err(Error::InvalidParams(format!(
                "window must straddle t = 0, got [{}, {}]",
                self.t_start, self.t_end
            )));
        }
        Ok(())
    }

    pub fn with_detunings(mut self, delta_p: f64, delta_s: f64) -> Self {
        self.delta_p = delta_p;
        self.delta_s = delta_s;
        self
    }

    pub fn with_phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self
    }

    pub fn with_omega0(mut self, omega0: f64) -> Self {
        self.omega0 = omega0;
        self
    }

    /// Change the timescale and re-derive the default ±3 T_d window.
    pub fn with_td(mut self, td: f64) -> Self {
        self.td = td;
        self.t_start = -pulses::WINDOW_TIMESCALES * td;
        self.t_end = pulses::WINDOW_TIMESCALES * td;
        self
    }

    pub fn with_window(mut self, t_start: f64, t_end: f64) -> Self {
        self.t_start = t_start;
        self.t_end = t_end;
        self
    }

    /// (Ω_p, Ω_s) at time `t` for this schedule's envelope family.
    pub fn envelopes(&self, t: f64) -> (f64, f64) {
        match &self.order {
            PulseOrder::Counterintuitive => {
                let s = pulses::envelope(t, self.omega0, self.td);
                (s.omega_p, s.omega_s)
            }
            PulseOrder::PumpFirst => {
                let s = pulses::envelope(-t, self.omega0, self.td);
                (s.omega_s, s.omega_p)
            }
            PulseOrder::PiPulsePair(seq) => seq.envelopes(t),
        }
    }

    /// Tone frequency difference δ = ω_p - ω_s = (ω₁₀ - ω₂₁) - Δ_p + Δ_s
    /// (rad/s).
    pub fn delta(&self, params: &QutritParams) -> f64 {
        (params.omega10() - params.omega21()) - self.delta_p + self.delta_s
    }
}

/// Rotating-frame Hamiltonian from explicit couplings (rad/s).
///
/// `phase` is the accumulated cross-tone phase δt - φ. The returned matrix is
///
/// ```text
///   [ 0                    g_p + g_s e^{-i phase}   0                        ]
///   [ g_p + g_s e^{i phase}  Δ_p                    λ (g_p e^{i phase} + g_s) ]
///   [ 0                    λ (g_p e^{-i phase} + g_s)  Δ_p + Δ_s             ]
/// ```
pub fn hamiltonian_from_couplings(
    g_p: f64,
    g_s: f64,
    phase: f64,
    lambda: f64,
    delta_p: f64,
    delta_s: f64,
) -> Mat3 {
    let e_plus = C64::from_polar(1.0, phase);
    let e_minus = e_plus.conj();
    let h01 = C64::new(g_p, 0.0) + g_s * e_minus;
    let h12 = lambda * (g_p * e_plus + C64::new(g_s, 0.0));
    let mut h = zeros3();
    h[0][1] = h01;
    h[1][0] = h01.conj();
    h[1][1] = C64::new(delta_p, 0.0);
    h[1][2] = h12;
    h[2][1] = h12.conj();
    h[2][2] = C64::new(delta_p + delta_s, 0.0);
    h
}

/// Full time-dependent rotating-frame Hamiltonian at time `t` (rad/s),
/// Hermitian by construction.
///
/// The envelopes define the Rabi rates Ω_p = 2 g_p on the lower transition
/// and Ω_s = 2 λ g_s on the upper one; the counter-pairing of each tone with
/// the other transition enters through the e^{±i(δt - φ)} cross terms.
pub fn build_hamiltonian(t: f64, params: &QutritParams, sched: &DriveSchedule) -> Mat3 {
    let (omega_p, omega_s) = sched.envelopes(t);
    let g_p = 0.5 * omega_p;
    let g_s = if params.lambda > 0.0 {
        0.5 * omega_s / params.lambda
    } else {
        0.0
    };
    let phase = sched.delta(params) * t - sched.phi;
    hamiltonian_from_couplings(
        g_p,
        g_s,
        phase,
        params.lambda,
        sched.delta_p,
        sched.delta_s,
    )
}

/// Reduced Raman Hamiltonian (the fast cross terms averaged away):
/// diagonal (0, Δ_p, Δ_p + Δ_s), off-diagonals Ω_p/2 and Ω_s/2.
pub fn build_raman_hamiltonian(omega_p: f64, omega_s: f64, delta_p: f64, delta_s: f64) -> Mat3 {
    let mut h = zeros3();
    h[0][1] = C64::new(0.5 * omega_p, 0.0);
    h[1][0] = h[0][1];
    h[1][1] = C64::new(delta_p, 0.0);
    h[1][2] = C64::new(0.5 * omega_s, 0.0);
    h[2][1] = h[1][2];
    h[2][2] = C64::new(delta_p + delta_s, 0.0);
    h
}

/// Decay rates entering the dissipator, pre-halved for the coherences.
#[derive(Copy, Clone, Debug)]
pub(crate) struct DissipatorRates {
    pub gamma10: f64,
    pub gamma21: f64,
    /// ½ (Γ₁₀ + γᵠ₁₀), decay of ρ₀₁.
    pub c01: f64,
    /// ½ (Γ₂₁ + γᵠ₂₀), decay of ρ₀₂.
    pub c02: f64,
    /// ½ (Γ₁₀ + Γ₂₁ + γᵠ₂₁), decay of ρ₁₂.
    pub c12: f64,
}

impl DissipatorRates {
    pub fn from_params(p: &QutritParams) -> Self {
        DissipatorRates {
            gamma10: p.gamma10,
            gamma21: p.gamma21,
            c01: 0.5 * (p.gamma10 + p.gphi10),
            c02: 0.5 * (p.gamma21 + p.gphi20),
            c12: 0.5 * (p.gamma10 + p.gamma21 + p.gphi21),
        }
    }
}

#[inline]
pub(crate) fn dissipator_raw(rho: &Mat3, r: &DissipatorRates) -> Mat3 {
    let mut d = zeros3();
    d[0][0] = r.gamma10 * rho[1][1];
    d[1][1] = r.gamma21 * rho[2][2] - r.gamma10 * rho[1][1];
    d[2][2] = -r.gamma21 * rho[2][2];
    d[0][1] = -r.c01 * rho[0][1];
    d[1][0] = -r.c01 * rho[1][0];
    d[0][2] = -r.c02 * rho[0][2];
    d[2][0] = -r.c02 * rho[2][0];
    d[1][2] = -r.c12 * rho[1][2];
    d[2][1] = -r.c12 * rho[2][1];
    d
}

/// Relaxation/dephasing part L(ρ) of the master equation (1/s units):
/// population flows |2⟩→|1⟩→|0⟩ at Γ₂₁ and Γ₁₀, coherences decay at
/// ½(Γ₁₀+γᵠ₁₀), ½(Γ₂₁+γᵠ₂₀) and ½(Γ₁₀+Γ₂₁+γᵠ₂₁). Traceless by construction.
pub fn dissipator(rho: &DensityMatrix, params: &QutritParams) -> Mat3 {
    dissipator_raw(rho.matrix(), &DissipatorRates::from_params(params))
}

/// Dark-state decomposition at one instant of the drive.
#[derive(Clone, Debug)]
pub struct DarkStateInfo {
    /// Mixing angle Θ with tan Θ = Ω_p / Ω_s (rad).
    pub theta: f64,
    /// Unit-norm amplitudes (cos Θ, 0, -sin Θ); no |1⟩ component.
    pub amplitudes: [C64; 3],
    /// Eigenvalues of the two-photon-resonant Raman Hamiltonian, ascending:
    /// {-Ω/2, 0, +Ω/2} with Ω = sqrt(Ω_p² + Ω_s²) (rad/s).
    pub eigenvalues: [f64; 3],
}

/// The zero-eigenvalue superposition of |0⟩ and |2⟩ that carries the
/// population transfer.
pub fn dark_state(omega_p: f64, omega_s: f64) -> Result<DarkStateInfo> {
    if omega_p == 0.0 && omega_s == 0.0 {
        return Err(Error::DegenerateDrive);
    }
    let theta = omega_p.atan2(omega_s);
    let amplitudes = [
        C64::new(theta.cos(), 0.0),
        C64::new(0.0, 0.0),
        C64::new(-theta.sin(), 0.0),
    ];
    let eigenvalues = eigvals_hermitian3(&build_raman_hamiltonian(omega_p, omega_s, 0.0, 0.0));
    Ok(DarkStateInfo {
        theta,
        amplitudes,
        eigenvalues,
    })
}

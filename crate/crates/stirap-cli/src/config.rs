// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! Human-facing configuration: a single JSON document with frequencies in
//! ordinary MHz and times in ns, converted to the simulator's rad/s and
//! seconds exactly once, here. Unknown keys are rejected so typos surface
//! immediately.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};
use stirap_core::dynamics::IntegratorConfig;
use stirap_core::experiments::{AxisSpec, Metric, Scenario, SweepParam, SweepSpec};
use stirap_core::pulses::{PiSequence, PiShape};
use stirap_core::qutrit::{DriveSchedule, PulseOrder, QutritParams};
use stirap_core::tomography::TomographyCalibration;
use stirap_core::{presets, Error};

pub fn mhz_to_rad(mhz: f64) -> f64 {
    TAU * (mhz * 1e6)
}

pub fn rad_to_mhz(rad: f64) -> f64 {
    rad / TAU / 1e6
}

pub fn ns_to_s(ns: f64) -> f64 {
    ns * 1e-9
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QutritConfig {
    pub f10_mhz: f64,
    pub f21_mhz: f64,
    pub lambda: f64,
    pub gamma10_per_s: f64,
    pub gamma21_per_s: f64,
    pub gphi10_per_s: f64,
    /// Defaults to 2 gphi10.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gphi20_per_s: Option<f64>,
    /// Defaults to gphi10.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gphi21_per_s: Option<f64>,
}

impl QutritConfig {
    pub fn to_params(&self) -> Result<QutritParams, Error> {
        QutritParams::with_dephasing(
            self.f10_mhz * 1e6,
            self.f21_mhz * 1e6,
            self.lambda,
            self.gamma10_per_s,
            self.gamma21_per_s,
            self.gphi10_per_s,
            self.gphi20_per_s.unwrap_or(2.0 * self.gphi10_per_s),
            self.gphi21_per_s.unwrap_or(self.gphi10_per_s),
        )
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub enum OrderConfig {
    #[default]
    Counterintuitive,
    PumpFirst,
    /// Sequential resonant π pulses on 0-1 then 1-2.
    PiPulsePair {
        omega_mhz: f64,
        width_ns: f64,
        gap_ns: f64,
        raised_cosine: bool,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveConfig {
    pub omega0_mhz: f64,
    pub td_ns: f64,
    #[serde(default)]
    pub delta_p_mhz: f64,
    #[serde(default)]
    pub delta_s_mhz: f64,
    #[serde(default)]
    pub phi_rad: f64,
    /// Defaults to -3 T_d.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_start_ns: Option<f64>,
    /// Defaults to +3 T_d.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end_ns: Option<f64>,
    #[serde(default)]
    pub order: OrderConfig,
}

impl DriveConfig {
    pub fn to_schedule(&self) -> Result<DriveSchedule, Error> {
        let mut sched = match &self.order {
            OrderConfig::Counterintuitive | OrderConfig::PumpFirst => {
                DriveSchedule::counterintuitive(mhz_to_rad(self.omega0_mhz), ns_to_s(self.td_ns))?
            }
            OrderConfig::PiPulsePair {
                omega_mhz,
                width_ns,
                gap_ns,
                raised_cosine,
            } => {
                let shape = if *raised_cosine {
                    PiShape::RaisedCosine
                } else {
                    PiShape::Rectangular
                };
                DriveSchedule::pi_pair(PiSequence::sequential(
                    mhz_to_rad(*omega_mhz),
                    ns_to_s(*width_ns),
                    ns_to_s(*gap_ns),
                    shape,
                ))?
            }
        };
        if matches!(self.order, OrderConfig::PumpFirst) {
            sched.order = PulseOrder::PumpFirst;
        }
        sched = sched
            .with_detunings(mhz_to_rad(self.delta_p_mhz), mhz_to_rad(self.delta_s_mhz))
            .with_phi(self.phi_rad);
        if let Some(t0) = self.t_start_ns {
            sched.t_start = ns_to_s(t0);
        }
        if let Some(t1) = self.t_end_ns {
            sched.t_end = ns_to_s(t1);
        }
        sched.validate()?;
        Ok(sched)
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorFileConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt_ps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record_every: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub renormalize: Option<bool>,
}

impl IntegratorFileConfig {
    pub fn to_config(&self) -> IntegratorConfig {
        let defaults = IntegratorConfig::default();
        IntegratorConfig {
            dt: self.dt_ps.map(|ps| ps * 1e-12),
            record_every: self.record_every.unwrap_or(defaults.record_every),
            phi_samples: self.phi_samples.unwrap_or(defaults.phi_samples),
            renormalize: self.renormalize.unwrap_or(defaults.renormalize),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationConfig {
    pub p_a: [f64; 3],
    pub p_b: [f64; 3],
}

impl CalibrationConfig {
    pub fn to_calibration(&self) -> Result<TomographyCalibration, Error> {
        TomographyCalibration::new(self.p_a, self.p_b)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    /// One of: delta_p, delta_s, omega0, td, pulse_area, phi.
    pub param: String,
    /// Display units: MHz for frequencies, ns for td, multiples of π for
    /// pulse_area, rad for phi.
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl AxisConfig {
    pub fn to_axis(&self) -> Result<AxisSpec, Error> {
        let param = SweepParam::parse(&self.param)?;
        let convert = |display: f64| -> f64 {
            match param {
                SweepParam::DeltaP | SweepParam::DeltaS | SweepParam::Omega0 => {
                    mhz_to_rad(display)
                }
                SweepParam::Td => ns_to_s(display),
                SweepParam::PulseArea => display * PI,
                SweepParam::Phi => display,
            }
        };
        AxisSpec::from_range(param, convert(self.start), convert(self.stop), convert(self.step))
    }

    /// Parse the `param=start:stop:step` command-line form.
    pub fn parse_flag(text: &str) -> Result<Self, String> {
        let (param, rest) = text
            .split_once('=')
            .ok_or_else(|| format!("expected param=start:stop:step, got '{text}'"))?;
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:step after '=', got '{rest}'"));
        }
        let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
        let nums = nums.map_err(|e| format!("bad number in '{rest}': {e}"))?;
        Ok(AxisConfig {
            param: param.to_string(),
            start: nums[0],
            stop: nums[1],
            step: nums[2],
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub axis1: AxisConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis2: Option<AxisConfig>,
    /// final_p2 | max_p2 | max_p1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
}

/// The whole scenario file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub qutrit: QutritConfig,
    pub drive: DriveConfig,
    #[serde(default)]
    pub integrator: IntegratorFileConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calibration: Option<CalibrationConfig>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

impl ScenarioConfig {
    pub fn to_scenario(&self) -> Result<Scenario, Error> {
        let scenario = Scenario {
            qutrit: self.qutrit.to_params()?,
            drive: self.drive.to_schedule()?,
            integrator: self.integrator.to_config(),
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn to_sweep_spec(&self) -> Result<SweepSpec, Error> {
        let sweep = self
            .sweep
            .as_ref()
            .ok_or_else(|| Error::InvalidParams("no sweep section or axis flags given".into()))?;
        let metric = match &sweep.metric {
            Some(name) => Metric::parse(name)?,
            None => Metric::MaxP2,
        };
        Ok(SweepSpec {
            axis1: sweep.axis1.to_axis()?,
            axis2: sweep.axis2.as_ref().map(|a| a.to_axis()).transpose()?,
            base: self.to_scenario()?,
            metric,
        })
    }
}

fn measured_qutrit() -> QutritConfig {
    QutritConfig {
        f10_mhz: 5555.0,
        f21_mhz: 5393.0,
        lambda: 1.45,
        gamma10_per_s: 2.83e6,
        gamma21_per_s: 5.10e6,
        gphi10_per_s: 8.06e6,
        gphi20_per_s: None,
        gphi21_per_s: None,
    }
}

fn improved_qutrit() -> QutritConfig {
    QutritConfig {
        f10_mhz: 5555.0,
        f21_mhz: 5555.0 * (1.0 - 0.08),
        lambda: 1.45,
        gamma10_per_s: 1.0 / 35.3e-6,
        gamma21_per_s: 1.0 / 19.6e-6,
        gphi10_per_s: 1.0 / 12.4e-6,
        gphi20_per_s: None,
        gphi21_per_s: None,
    }
}

fn drive(omega0_mhz: f64, td_ns: f64) -> DriveConfig {
    DriveConfig {
        omega0_mhz,
        td_ns,
        delta_p_mhz: 0.0,
        delta_s_mhz: 0.0,
        phi_rad: 0.0,
        t_start_ns: None,
        t_end_ns: None,
        order: OrderConfig::Counterintuitive,
    }
}

/// Compiled-in presets. `paper-fig4` is an alias for `paper-fig4a`.
pub fn preset(name: &str, coarse: bool) -> Result<ScenarioConfig, Error> {
    let demo_calib = CalibrationConfig {
        p_a: [0.05, 0.60, 0.90],
        p_b: [0.0, 0.05, 0.70],
    };
    let base = match name {
        "paper-fig2" => ScenarioConfig {
            qutrit: measured_qutrit(),
            drive: drive(42.8, 100.0),
            integrator: IntegratorFileConfig::default(),
            calibration: Some(demo_calib),
            labels: BTreeMap::new(),
            sweep: None,
        },
        "paper-fig3" => {
            let mut cfg = preset("paper-fig2", coarse)?;
            cfg.drive.delta_s_mhz = rad_to_mhz(presets::paper_fig3_default_delta_s());
            cfg.sweep = Some(SweepConfig {
                axis1: AxisConfig {
                    param: "delta_p".into(),
                    start: -60.0,
                    stop: 120.0,
                    step: if coarse { 2.0 } else { 1.0 },
                },
                axis2: None,
                metric: Some("max_p2".into()),
            });
            cfg
        }
        "paper-fig4a" | "paper-fig4" => {
            let mut cfg = preset("paper-fig4b", coarse)?;
            cfg.sweep = Some(SweepConfig {
                axis1: AxisConfig {
                    param: "omega0".into(),
                    start: 20.0,
                    stop: 400.0,
                    step: if coarse { 40.0 } else { 10.0 },
                },
                axis2: Some(AxisConfig {
                    param: "td".into(),
                    start: 10.0,
                    stop: 200.0,
                    step: if coarse { 20.0 } else { 5.0 },
                }),
                metric: Some("final_p2".into()),
            });
            cfg
        }
        "paper-fig4b" => ScenarioConfig {
            qutrit: improved_qutrit(),
            drive: drive(100.0, 50.0),
            integrator: IntegratorFileConfig::default(),
            calibration: Some(demo_calib),
            labels: BTreeMap::new(),
            sweep: None,
        },
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown preset '{other}' (expected paper-fig2, paper-fig3, paper-fig4a or paper-fig4b)"
            )))
        }
    };
    Ok(base)
}

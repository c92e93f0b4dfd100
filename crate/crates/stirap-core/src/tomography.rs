// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! Level-population readout by linear inversion.
//!
//! The qutrit is read out with two calibrated flux pulses A and B that lower
//! the potential barrier to different depths, so each level tunnels with a
//! known probability. A measured pair of tunneling probabilities (p^A, p^B)
//! plus normalization then determines the three level populations exactly:
//!
//! ```text
//!   p^{A,B} = P0 p0^{A,B} + P1 p1^{A,B} + P2 p2^{A,B},   P0 + P1 + P2 = 1
//! ```
//!
//! inverted in closed form via the 3×3 determinant D below. No fitting, no
//! likelihood maximization; the inverse is exact whenever the two pulses are
//! distinct enough that |D| is well away from zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-level tunneling probabilities for the two measurement pulses.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TomographyCalibration {
    /// (p0^A, p1^A, p2^A) for the shallower pulse A.
    pub p_a: [f64; 3],
    /// (p0^B, p1^B, p2^B) for the deeper pulse B.
    pub p_b: [f64; 3],
}

pub const SINGULARITY_THRESHOLD: f64 = 1e-6;

impl TomographyCalibration {
    pub fn new(p_a: [f64; 3], p_b: [f64; 3]) -> Result<Self> {
        let calib = TomographyCalibration { p_a, p_b };
        calib.validate()?;
        Ok(calib)
    }

    /// Range-check the six probabilities and require invertibility.
    /// Non-monotone level ordering is physically suspect (a higher level
    /// should tunnel at least as readily) but only warrants a warning flag,
    /// not rejection.
    pub fn validate(&self) -> Result<()> {
        for (pulse, probs) in [("A", &self.p_a), ("B", &self.p_b)] {
            for (level, p) in probs.iter().enumerate() {
                if !(0.0..=1.0).contains(p) {
                    return Err(Error::InvalidParams(format!(
                        "tunneling probability p{level}^{pulse} = {p} outside [0, 1]"
                    )));
                }
            }
        }
        let d = self.determinant();
        if d.abs() <= SINGULARITY_THRESHOLD {
            return Err(Error::SingularCalibration { determinant: d });
        }
        Ok(())
    }

    /// True when either pulse tunnels a lower level more readily than a
    /// higher one.
    pub fn monotonicity_warning(&self) -> bool {
        [self.p_a, self.p_b]
            .iter()
            .any(|p| p[0] > p[1] || p[1] > p[2])
    }

    /// Determinant of [[1,1,1], [p^A row], [p^B row]].
    pub fn determinant(&self) -> f64 {
        determinant(self)
    }
}

/// The readout determinant; the inversion divides by this.
pub fn determinant(calib: &TomographyCalibration) -> f64 {
    let a = calib.p_a;
    let b = calib.p_b;
    (a[1] * b[2] - a[2] * b[1]) - (a[0] * b[2] - a[2] * b[0]) + (a[0] * b[1] - a[1] * b[0])
}

/// Forward model: expected (p^A, p^B) for populations P.
pub fn forward(populations: [f64; 3], calib: &TomographyCalibration) -> Result<(f64, f64)> {
    let sum: f64 = populations.iter().sum();
    if (sum - 1.0).abs() > 1e-9 || populations.iter().any(|p| !(-1e-12..=1.0 + 1e-12).contains(p))
    {
        return Err(Error::InvalidPopulations { sum });
    }
    let dot = |cal: &[f64; 3]| {
        populations[0] * cal[0] + populations[1] * cal[1] + populations[2] * cal[2]
    };
    Ok((dot(&calib.p_a), dot(&calib.p_b)))
}

/// Exact linear inversion of one measured pair. The output sums to one by
/// construction; individual components may exit [0, 1] for noisy inputs and
/// are reported raw (see [`clamp_to_simplex`] for the cleaned-up variant).
pub fn invert(p_a: f64, p_b: f64, calib: &TomographyCalibration) -> Result<[f64; 3]> {
    let d = determinant(calib);
    if d.abs() <= SINGULARITY_THRESHOLD {
        return Err(Error::SingularCalibration { determinant: d });
    }
    let a = calib.p_a;
    let b = calib.p_b;
    let mut populations = [0.0; 3];
    // Cyclic index rule: for each i, (j, k) are the other two levels in
    // circular order {0,1,2}, {1,2,0}, {2,0,1}.
    for i in 0..3 {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        populations[i] =
            ((b[j] - b[k]) * p_a + (a[k] - a[j]) * p_b + a[j] * b[k] - a[k] * b[j]) / d;
    }
    Ok(populations)
}

/// Clamp to [0, 1] and renormalize to unit sum; explicit post-processing for
/// plotting, never applied silently.
pub fn clamp_to_simplex(populations: [f64; 3]) -> [f64; 3] {
    let mut clamped = populations.map(|p| p.clamp(0.0, 1.0));
    let sum: f64 = clamped.iter().sum();
    if sum > 0.0 {
        for p in clamped.iter_mut() {
            *p /= sum;
        }
    }
    clamped
}

/// Batch inversion of `pA,pB` CSV rows (header required) into raw and
/// clamped populations.
pub fn batch_invert_csv(input: &str, calib: &TomographyCalibration) -> Result<String> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidParams("empty tomography input".into()))?;
    let normalized = header.replace(' ', "").to_ascii_lowercase();
    if normalized != "pa,pb" {
        return Err(Error::InvalidParams(format!(
            "expected header 'pA,pB', got '{header}'"
        )));
    }
    let mut out = String::from("P0,P1,P2,P0_clamped,P1_clamped,P2_clamped\n");
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let parse = |field: Option<&str>| -> Result<f64> {
            field
                .map(str::trim)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| {
                    Error::InvalidParams(format!(
                        "bad tomography row {}: '{line}'",
                        lineno + 2
                    ))
                })
        };
        let p_a = parse(fields.next())?;
        let p_b = parse(fields.next())?;
        let raw = invert(p_a, p_b, calib)?;
        let clamped = clamp_to_simplex(raw);
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            raw[0], raw[1], raw[2], clamped[0], clamped[1], clamped[2]
        ));
    }
    Ok(out)
}

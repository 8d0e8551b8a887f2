// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::device::DeviceParams;
use crate::error::{ensure_positive, Error, Result};
use crate::qalgebra::{cat_state, displacement, parity, relabel, TruncationWarning};

/// Probe step of the second difference.
const CURVATURE_STEP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatMetrology {
    pub alpha: f64,
    /// Probe amplitudes `ε` of `D(iε)`.
    pub probes: Vec<f64>,
    /// Parity `⟨Π⟩` after each probe.
    pub signal: Vec<f64>,
    /// `S''(0)` of the parity signal.
    pub curvature: f64,
    /// `2π / √(−S''(0))`.
    pub fringe_period: f64,
    pub warnings: Vec<TruncationWarning>,
}

/// Parity signal of the even cat `N(|α⟩ + |−α⟩)` under a probe
/// displacement `D(iε)`, `ε ∈ [−probe, probe]` on `samples` points.
pub fn cat_metrology(alpha: f64, probe: f64, samples: usize, dim: usize) -> Result<CatMetrology> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter { name: "alpha_cat", reason: format!("must be finite and >= 0, got {alpha}") });
    }
    ensure_positive("probe", probe)?;
    if samples < 3 {
        return Err(Error::InvalidParameter { name: "samples", reason: "need at least 3".into() });
    }
    let cat = cat_state("lc", C64::new(alpha, 0.0), 0.0, dim)?;
    let mut warnings = cat.warnings;
    let psi = cat.value;
    let pi_op = relabel(&parity(dim)?, "lc")?;
    let signal_at = |eps: f64, warnings: &mut Vec<TruncationWarning>| -> Result<f64> {
        let d = displacement(C64::new(0.0, eps), dim)?;
        for w in d.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        Ok(psi.apply(&relabel(&d.value, "lc")?)?.expectation(&pi_op)?.re)
    };
    let probes: Vec<f64> = (0..samples).map(|k| -probe + 2.0 * probe * k as f64 / (samples - 1) as f64).collect();
    let signal = probes.iter().map(|&e| signal_at(e, &mut warnings)).collect::<Result<Vec<_>>>()?;
    let h = CURVATURE_STEP;
    let s0 = signal_at(0.0, &mut warnings)?;
    let curvature = (signal_at(h, &mut warnings)? - 2.0 * s0 + signal_at(-h, &mut warnings)?) / (h * h);
    if curvature >= 0.0 {
        return Err(Error::NonConvergence { what: "fringe curvature", detail: format!("S''(0) = {curvature} is not negative") });
    }
    Ok(CatMetrology { alpha, probes, signal, curvature, fringe_period: TAU / (-curvature).sqrt(), warnings })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VoltageExtrapolation {
    pub mean_photons: f64,
    /// Zero-point voltage `q0 / C0`.
    pub zero_point_voltage: f64,
    /// `V0 √(2n̄ + 1)`.
    pub rms_voltage: f64,
    /// Heisenberg-limited single-shot resolution `V0 / (2√n̄)`.
    pub resolution: f64,
}

/// Closed-form SI voltage scale of an LC cat with `n̄` photons.
pub fn voltage_extrapolation(device: &DeviceParams, mean_photons: f64) -> Result<VoltageExtrapolation> {
    ensure_positive("mean_photons", mean_photons)?;
    let v0 = device.q0 / device.c0;
    Ok(VoltageExtrapolation {
        mean_photons,
        zero_point_voltage: v0,
        rms_voltage: v0 * (2.0 * mean_photons + 1.0).sqrt(),
        resolution: v0 / (2.0 * mean_photons.sqrt()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Wigner-function value of the even-cat parity signal.
    fn parity_oracle(alpha: f64, eps: f64) -> f64 {
        let w = (-2.0 * alpha * alpha).exp();
        (-2.0 * eps * eps).exp() * (w + (4.0 * alpha * eps).cos()) / (1.0 + w)
    }

    fn period_oracle(alpha: f64) -> f64 {
        let w = (-2.0 * alpha * alpha).exp();
        TAU / (4.0 + 16.0 * alpha * alpha / (1.0 + w)).sqrt()
    }

    #[test]
    fn vacuum_has_no_enhancement() {
        let m = cat_metrology(0.0, 0.5, 11, 32).unwrap();
        assert!((m.fringe_period - PI).abs() < 1e-5);
    }

    #[test]
    fn signal_matches_wigner_oracle() {
        let m = cat_metrology(2.0, 0.4, 21, 64).unwrap();
        for (e, s) in m.probes.iter().zip(&m.signal) {
            assert!((s - parity_oracle(2.0, *e)).abs() < 1e-8);
        }
        assert!((m.fringe_period - period_oracle(2.0)).abs() / period_oracle(2.0) < 1e-5);
    }

    #[test]
    fn doubling_alpha_halves_period() {
        let a = cat_metrology(2.0, 0.2, 5, 64).unwrap();
        let b = cat_metrology(4.0, 0.2, 5, 64).unwrap();
        assert!((b.fringe_period / a.fringe_period - 0.5).abs() < 0.05 * 0.5);
    }

    #[test]
    fn si_voltage_order_of_magnitude() {
        let d = DeviceParams::operating_point();
        let v = voltage_extrapolation(&d, 100.0).unwrap();
        assert!(v.rms_voltage > 1e-5 && v.rms_voltage < 1e-3, "{}", v.rms_voltage);
        assert!(v.resolution < 1e-6);
    }
}

// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Least-squares fit of `y = A cos(ωt + φ) + C`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_PERIODS: f64 = 3.0;
/// RMS residual, relative to the amplitude, above which a fit is flagged.
pub const RESIDUAL_THRESHOLD: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RabiFit {
    /// Angular frequency of the oscillation.
    pub omega: f64,
    pub amplitude: f64,
    pub phase: f64,
    pub offset: f64,
    pub residual_rms: f64,
    /// Oscillation periods covered by the samples.
    pub periods: f64,
    pub confident: bool,
}

struct Linear {
    sse: f64,
    coeffs: [f64; 3],
}

fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(&m);
    let scale = m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs())).powi(3);
    if d.abs() <= 1e-14 * scale {
        return None;
    }
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut mk = m;
        for r in 0..3 {
            mk[r][k] = b[r];
        }
        *o = det(&mk) / d;
    }
    Some(out)
}

fn linear_fit(times: &[f64], values: &[f64], omega: f64) -> Linear {
    let mut m = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for (&t, &y) in times.iter().zip(values) {
        let basis = [(omega * t).cos(), (omega * t).sin(), 1.0];
        for r in 0..3 {
            rhs[r] += basis[r] * y;
            for c in 0..3 {
                m[r][c] += basis[r] * basis[c];
            }
        }
    }
    let coeffs = solve3(m, rhs).unwrap_or([0.0, 0.0, values.iter().sum::<f64>() / values.len() as f64]);
    let sse = times
        .iter()
        .zip(values)
        .map(|(&t, &y)| {
            let model = coeffs[0] * (omega * t).cos() + coeffs[1] * (omega * t).sin() + coeffs[2];
            (y - model).powi(2)
        })
        .sum();
    Linear { sse, coeffs }
}

/// Fits the dominant sinusoid. Grid search over `ω` up to the Nyquist
/// frequency of the smallest sample spacing, then golden-section refinement.
pub fn extract_rabi_frequency(times: &[f64], values: &[f64]) -> Result<RabiFit> {
    if times.len() != values.len() {
        return Err(Error::DimensionMismatch { expected: times.len(), found: values.len() });
    }
    if times.len() < 8 {
        return Err(Error::InvalidParameter { name: "time_series", reason: format!("need at least 8 samples, got {}", times.len()) });
    }
    let span = times[times.len() - 1] - times[0];
    let dt_min = times.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if !(span > 0.0 && dt_min > 0.0) {
        return Err(Error::InvalidParameter { name: "time_series", reason: "times must be strictly increasing".into() });
    }
    let step = std::f64::consts::PI / (4.0 * span);
    let nyquist = std::f64::consts::PI / dt_min;
    let mut best = (step, f64::INFINITY);
    let mut omega = step;
    while omega <= nyquist {
        let sse = linear_fit(times, values, omega).sse;
        if sse < best.1 {
            best = (omega, sse);
        }
        omega += step;
    }
    let (mut lo, mut hi) = ((best.0 - step).max(step * 0.5), best.0 + step);
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - golden * (hi - lo);
    let mut x2 = lo + golden * (hi - lo);
    let mut f1 = linear_fit(times, values, x1).sse;
    let mut f2 = linear_fit(times, values, x2).sse;
    while hi - lo > 1e-13 * hi {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = linear_fit(times, values, x1).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = linear_fit(times, values, x2).sse;
        }
    }
    let omega = 0.5 * (lo + hi);
    let fit = linear_fit(times, values, omega);
    let [c, s, offset] = fit.coeffs;
    let amplitude = c.hypot(s);
    let phase = (-s).atan2(c);
    let residual_rms = (fit.sse / times.len() as f64).sqrt();
    let periods = omega * span / std::f64::consts::TAU;
    let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1e-300);
    let confident = amplitude > 1e-9 * scale && residual_rms <= RESIDUAL_THRESHOLD * amplitude && periods >= MIN_PERIODS;
    Ok(RabiFit { omega, amplitude, phase, offset, residual_rms, periods, confident })
}

// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Dormand–Prince 5(4) with FSAL and step clipping onto sample times.

use ndarray::{Array2, Zip};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; chosen from the RHS scale when `None`.
    pub first_step: Option<f64>,
    pub max_step: f64,
    pub max_steps: usize,
}

impl StepOptions {
    /// `rtol = tolerance`, `atol = tolerance / 100`.
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self { rtol: tolerance, atol: tolerance * 1e-2, ..Self::default() }
    }
}

impl Default for StepOptions {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, first_step: None, max_step: f64::INFINITY, max_steps: 50_000_000 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evaluations: usize,
    pub min_step: f64,
    pub max_step: f64,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `dy/dt = f(t, y)` from `t0` to `t_final`, calling `on_sample`
/// at each time in `samples` (sorted, inside `[t0, t_final]`) and returning
/// the state at `t_final`.
pub fn integrate<F, S>(
    mut rhs: F,
    t0: f64,
    y0: Array2<C64>,
    t_final: f64,
    samples: &[f64],
    opts: &StepOptions,
    mut on_sample: S,
) -> Result<(Array2<C64>, StepStats)>
where
    F: FnMut(f64, &Array2<C64>, &mut Array2<C64>),
    S: FnMut(f64, &Array2<C64>),
{
    let shape = y0.raw_dim();
    let mut y = y0;
    let mut t = t0;
    let mut k: Vec<Array2<C64>> = (0..7).map(|_| Array2::zeros(shape.clone())).collect();
    let mut stage = Array2::<C64>::zeros(shape.clone());
    let mut y_new = Array2::<C64>::zeros(shape.clone());
    let mut stats = StepStats { min_step: f64::INFINITY, ..StepStats::default() };

    let mut next_sample = 0;
    while next_sample < samples.len() && samples[next_sample] <= t0 {
        on_sample(samples[next_sample], &y);
        next_sample += 1;
    }
    if t_final <= t0 {
        return Ok((y, stats));
    }

    rhs(t, &y, &mut k[0]);
    stats.rhs_evaluations += 1;
    let mut h = match opts.first_step {
        Some(h) => h,
        None => {
            let scale = max_abs(&k[0]) / max_abs(&y).max(1e-300);
            let guess = if scale > 0.0 { 0.01 / scale } else { t_final - t0 };
            guess.min(t_final - t0)
        }
    }
    .min(opts.max_step);

    let mut steps = 0usize;
    loop {
        let target = if next_sample < samples.len() { samples[next_sample].min(t_final) } else { t_final };
        let remaining = target - t;
        let clipped = h >= remaining * (1.0 - 1e-12);
        let h_try = if clipped { remaining } else { h };
        if h_try < 1e-14 * t.abs().max(1.0) && !clipped {
            return Err(Error::StepSizeUnderflow { t, h: h_try });
        }

        for s in 1..7 {
            stage.assign(&y);
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    stage.scaled_add(C64::new(h_try * a, 0.0), kj);
                }
            }
            rhs(t + C[s] * h_try, &stage, &mut k[s]);
        }
        // The last stage is evaluated at the fifth-order solution (FSAL).
        y_new.assign(&stage);
        stats.rhs_evaluations += 6;

        let err = error_norm(&k, &y, &y_new, h_try, opts);
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::NonConvergence { what: "integrator", detail: format!("exceeded {} steps at t = {t}", opts.max_steps) });
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        if err <= 1.0 {
            t = if clipped { target } else { t + h_try };
            std::mem::swap(&mut y, &mut y_new);
            k.swap(0, 6);
            stats.accepted += 1;
            stats.min_step = stats.min_step.min(h_try);
            stats.max_step = stats.max_step.max(h_try);
            let proposal = (factor * h_try).min(opts.max_step);
            h = if clipped { h.max(proposal).min(opts.max_step) } else { proposal };
            if clipped && next_sample < samples.len() && samples[next_sample] <= t {
                while next_sample < samples.len() && samples[next_sample] <= t {
                    on_sample(samples[next_sample], &y);
                    next_sample += 1;
                }
            }
            if t >= t_final {
                break;
            }
        } else {
            stats.rejected += 1;
            h = h_try * factor.min(1.0);
        }
    }
    Ok((y, stats))
}

fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

fn error_norm(k: &[Array2<C64>], y: &Array2<C64>, y_new: &Array2<C64>, h: f64, opts: &StepOptions) -> f64 {
    let mut worst: f64 = 0.0;
    Zip::indexed(y).and(y_new).for_each(|idx, &a, &b| {
        let mut e = C64::new(0.0, 0.0);
        for (ki, &ei) in k.iter().zip(E.iter()) {
            if ei != 0.0 {
                e += ki[idx] * ei;
            }
        }
        let scale = opts.atol + opts.rtol * a.norm().max(b.norm());
        worst = worst.max((e * h).norm() / scale);
    });
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth_and_oscillation() {
        let y0 = Array2::from_elem((1, 1), C64::new(1.0, 0.0));
        let w = C64::new(-0.3, 2.0);
        let mut seen = Vec::new();
        let (y, stats) = integrate(
            |_, y, dy| dy.assign(&y.mapv(|v| v * w)),
            0.0,
            y0,
            3.0,
            &[0.0, 1.0, 2.5],
            &StepOptions::default(),
            |t, y| seen.push((t, y[[0, 0]])),
        )
        .unwrap();
        assert!((y[[0, 0]] - (w * 3.0).exp()).norm() < 1e-9);
        assert_eq!(seen.len(), 3);
        for (t, v) in seen {
            assert!((v - (w * t).exp()).norm() < 1e-9);
        }
        assert!(stats.accepted > 0);
    }

    #[test]
    fn fifth_order_convergence() {
        let y0 = Array2::from_elem((1, 1), C64::new(1.0, 0.0));
        let run = |h: f64| {
            let opts = StepOptions { rtol: 1.0, atol: 1.0, first_step: Some(h), max_step: h, ..StepOptions::default() };
            let (y, _) = integrate(|t, y, dy| dy.assign(&y.mapv(|v| v * C64::new(0.0, t.cos()))), 0.0, y0.clone(), 1.0, &[], &opts, |_, _| {}).unwrap();
            (y[[0, 0]] - C64::from_polar(1.0, 1f64.sin())).norm()
        };
        let ratio = run(0.1) / run(0.05);
        assert!(ratio > 20.0 && ratio < 45.0, "{ratio}");
    }

    #[test]
    fn zero_rhs() {
        let y0 = Array2::from_elem((2, 2), C64::new(0.5, 0.1));
        let (y, _) = integrate(|_, _, dy| dy.fill(C64::new(0.0, 0.0)), 0.0, y0.clone(), 10.0, &[], &StepOptions::default(), |_, _| {}).unwrap();
        assert_eq!(y, y0);
    }
}

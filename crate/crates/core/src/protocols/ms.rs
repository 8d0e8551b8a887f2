// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::schedule::PulseSchedule;
use crate::dynamics::{fidelity, heating_collapse_ops, HeatingModel};
use crate::error::{Error, Result};
use crate::hamiltonians::{ms_hamiltonian, Frame, ModelParams, RegimeWarning, TimeDependentHamiltonian, LC, MOTION, SPIN};
use crate::qalgebra::linalg;
use crate::qalgebra::{annihilation, embed, fock_state, pauli, spin_up, Axis, ModeLayout, QOperator, QState};

/// Motional purity below which the phase-space loop counts as open.
pub const PURITY_THRESHOLD: f64 = 0.999;
/// LC levels `0..FIT_LEVELS` enter the generator fit.
pub const FIT_LEVELS: usize = 6;

/// `|α| = 2πn g Ω0 / δ²` with `g = 2ηg0/3`.
pub fn ms_alpha(p: &ModelParams, delta: f64, n: u32) -> f64 {
    2.0 * PI * n as f64 * p.effective_coupling() * p.omega0 / (delta * delta)
}

/// Loop closure time `t_n = 2πn/|δ|`.
pub fn loop_time(delta: f64, n: u32) -> f64 {
    2.0 * PI * n as f64 / delta.abs()
}

/// `Z = e^{−iπσz/2} = −iσz` on the spin slot.
pub fn z_pulse(layout: &ModeLayout) -> Result<QOperator> {
    Ok(embed(&pauli(Axis::Z), layout, SPIN)?.scale(C64::new(0.0, -1.0)))
}

/// Forward loop at `δ`, `Z`, reversed loop at `−δ`, `Z`. The reversed loop
/// realises `U_n†`, so the composite is `Z U_n† Z U_n`.
pub fn ms_schedule(p: &ModelParams, delta: f64, n: u32, layout: &ModeLayout) -> Result<PulseSchedule> {
    ms_schedule_with_pulse(p, delta, n, layout, 0.0)
}

/// As [`ms_schedule`] with each `Z` replaced by a square `σz` pulse of
/// length `pulse_duration` during which the bichromatic drive is off.
/// Zero gives the instantaneous pulse.
pub fn ms_schedule_with_pulse(p: &ModelParams, delta: f64, n: u32, layout: &ModeLayout, pulse_duration: f64) -> Result<PulseSchedule> {
    if n == 0 {
        return Err(Error::InvalidParameter { name: "n", reason: "must be >= 1".into() });
    }
    if !(pulse_duration >= 0.0 && pulse_duration.is_finite()) {
        return Err(Error::InvalidParameter { name: "pulse_duration", reason: format!("must be finite and >= 0, got {pulse_duration}") });
    }
    let t = loop_time(delta, n);
    let z = |s: PulseSchedule| -> Result<PulseSchedule> {
        if pulse_duration == 0.0 {
            s.gate(z_pulse(layout)?)
        } else {
            let mut h = TimeDependentHamiltonian::new(layout.clone(), Frame::Rotating);
            h.add_static(embed(&pauli(Axis::Z), layout, SPIN)?.scale_re(PI / (2.0 * pulse_duration)))?;
            s.evolve(h, pulse_duration)
        }
    };
    let s = PulseSchedule::new(layout.clone()).evolve(ms_hamiltonian(p, delta, layout)?, t)?;
    let s = z(s)?.evolve(ms_hamiltonian(p, -delta, layout)?, t)?;
    z(s)
}

#[derive(Debug, Clone)]
pub struct MsOutcome {
    pub composite: QOperator,
    pub forward: QOperator,
    /// Real `α` of the fitted `exp(iα q σx)`.
    pub alpha: f64,
    /// `‖G − iα q σx‖ / ‖iα q σx‖` on the fitted block; absolute when `α = 0`.
    pub fit_residual: f64,
    /// Motional purity after the forward loop for a `|↑, 1, 0⟩` input.
    pub motional_purity: f64,
    /// LC-Fock phase spread of the forward loop and of the composite.
    pub phase_spread_forward: f64,
    pub phase_spread_composite: f64,
    pub warnings: Vec<RegimeWarning>,
}

impl MsOutcome {
    pub fn echo_suppression(&self) -> f64 {
        self.phase_spread_forward / self.phase_spread_composite.max(f64::MIN_POSITIVE)
    }
}

/// Runs the echoed sequence on `[spin, lc(lc_dim), motion(motion_dim)]`
/// and fits the effective spin/LC generator.
pub fn ms_sequence(p: &ModelParams, delta: f64, n: u32, lc_dim: usize, motion_dim: usize, tolerance: f64) -> Result<MsOutcome> {
    if lc_dim < FIT_LEVELS + 1 {
        return Err(Error::InvalidDimension { dim: lc_dim, reason: "LC truncation must exceed the fitted block" });
    }
    let layout = ModeLayout::spin_lc_motion(lc_dim, motion_dim)?;
    let schedule = ms_schedule(p, delta, n, &layout)?;
    let forward = match &schedule.segments()[0] {
        super::schedule::Segment::Evolve { hamiltonian, duration } => {
            crate::dynamics::evolve_propagator(hamiltonian, *duration, tolerance)?
        }
        super::schedule::Segment::Gate(_) => unreachable!("schedule starts with evolution"),
    };
    let composite = schedule.propagator(tolerance)?;
    let warnings = ms_hamiltonian(p, delta, &layout)?.warnings().to_vec();

    let psi0 = QState::product(&[spin_up(SPIN), fock_state(LC, lc_dim, 1)?, fock_state(MOTION, motion_dim, 0)?])?;
    let motional_purity = psi0.apply(&forward)?.reduced(&[MOTION])?.purity();
    if motional_purity < PURITY_THRESHOLD {
        return Err(Error::TrajectoryNotClosed { purity: motional_purity, threshold: PURITY_THRESHOLD });
    }

    let sl = layout.sub_layout(&[SPIN, LC])?;
    let block = |u: &QOperator| motion_vacuum_block(u, &layout, &sl);
    let e_fwd = block(&forward);
    let e_comp = block(&composite);
    let (alpha, fit_residual) = fit_alpha(&e_comp, &sl)?;
    Ok(MsOutcome {
        phase_spread_forward: fock_phase_spread(&e_fwd, &sl),
        phase_spread_composite: fock_phase_spread(&e_comp, &sl),
        composite,
        forward,
        alpha,
        fit_residual,
        motional_purity,
        warnings,
    })
}

/// `⟨0_m| U |0_m⟩` on `[spin, lc]`.
fn motion_vacuum_block(u: &QOperator, full: &ModeLayout, sl: &ModeLayout) -> Array2<C64> {
    let d = sl.total_dim();
    let m = u.matrix();
    let idx = |k: usize| {
        let dg = sl.digits(k);
        full.index(&[dg[0], dg[1], 0])
    };
    Array2::from_shape_fn((d, d), |(i, j)| m[[idx(i), idx(j)]])
}

fn fit_indices(sl: &ModeLayout) -> Vec<usize> {
    (0..sl.total_dim()).filter(|&k| sl.digits(k)[1] < FIT_LEVELS).collect()
}

fn restrict(m: &Array2<C64>, keep: &[usize]) -> Array2<C64> {
    Array2::from_shape_fn((keep.len(), keep.len()), |(i, j)| m[[keep[i], keep[j]]])
}

fn fit_alpha(e: &Array2<C64>, sl: &ModeLayout) -> Result<(f64, f64)> {
    let phase = linalg::trace(e).arg();
    let g = linalg::logm(&e.mapv(|z| z * C64::from_polar(1.0, -phase)))?;
    let a = embed(&annihilation(sl.dim_of(LC)?)?, sl, LC)?;
    let q = (&a + &a.dagger()).scale_re(FRAC_1_SQRT_2);
    let qsx = q.compose(&embed(&pauli(Axis::X), sl, SPIN)?)?;
    let keep = fit_indices(sl);
    let gr = restrict(&g, &keep);
    let ar = restrict(qsx.matrix(), &keep);
    let norm_a = linalg::frobenius_inner(&ar, &ar).re;
    let alpha = linalg::frobenius_inner(&ar, &gr).im / norm_a;
    let model = ar.mapv(|z| z * C64::new(0.0, alpha));
    let diff = &gr - &model;
    let err = linalg::frobenius_inner(&diff, &diff).re.sqrt();
    let scale = (alpha.abs() * norm_a.sqrt()).max(f64::MIN_POSITIVE);
    let residual = if alpha == 0.0 { err } else { err / scale };
    Ok((alpha, residual))
}

/// Spread of `arg ⟨↑,k|E|↑,k⟩` over the fitted LC levels after removing
/// the `k = 0` phase.
fn fock_phase_spread(e: &Array2<C64>, sl: &ModeLayout) -> f64 {
    let d0 = e[[sl.index(&[0, 0]), sl.index(&[0, 0])]];
    let phases: Vec<f64> = (0..FIT_LEVELS).map(|k| (e[[sl.index(&[0, k]), sl.index(&[0, k])]] * d0.conj()).arg()).collect();
    let max = phases.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = phases.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

/// One row of a heating scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatingPoint {
    pub delta: f64,
    pub n: u32,
    pub alpha: f64,
    pub duration: f64,
    pub infidelity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatingScanOptions {
    pub lc_dim: usize,
    pub motion_dim: usize,
    pub model: HeatingModel,
    pub tolerance: f64,
}

impl Default for HeatingScanOptions {
    fn default() -> Self {
        Self { lc_dim: 6, motion_dim: 8, model: HeatingModel::InfiniteTemperature, tolerance: 1e-9 }
    }
}

/// Loop count that brings `|α|` closest to `target_alpha` at `delta`.
pub fn loops_for_alpha(p: &ModelParams, delta: f64, target_alpha: f64) -> u32 {
    let per_loop = ms_alpha(p, delta, 1);
    if per_loop == 0.0 {
        return 1;
    }
    (target_alpha / per_loop).round().max(1.0) as u32
}

/// Lindblad runs of the echoed sequence with motional heating `gamma`,
/// one per `δ`, each with `n` picked to hold `α` near `target_alpha`.
/// Infidelity is against the ideal gate `−exp(iα q σx)` applied to
/// `|↑, 0⟩`, compared on the spin/LC reduced state.
pub fn heating_resistance_scan(
    p: &ModelParams,
    deltas: &[f64],
    gamma: f64,
    target_alpha: f64,
    opts: &HeatingScanOptions,
) -> Result<Vec<HeatingPoint>> {
    deltas
        .iter()
        .map(|&delta| {
            let n = loops_for_alpha(p, delta, target_alpha);
            heating_point(p, delta, n, gamma, opts)
        })
        .collect()
}

/// Single heating run at `(δ, n)`.
pub fn heating_point(p: &ModelParams, delta: f64, n: u32, gamma: f64, opts: &HeatingScanOptions) -> Result<HeatingPoint> {
    let layout = ModeLayout::spin_lc_motion(opts.lc_dim, opts.motion_dim)?;
    let schedule = ms_schedule(p, delta, n, &layout)?;
    let collapse = heating_collapse_ops(&layout, MOTION, gamma, opts.model)?;
    let psi0 = QState::product(&[spin_up(SPIN), fock_state(LC, opts.lc_dim, 0)?, fock_state(MOTION, opts.motion_dim, 0)?])?;
    let run = schedule.run_lindblad(&psi0, &collapse, opts.tolerance)?;
    let reduced = run.state.reduced(&[SPIN, LC])?;
    let alpha = ms_alpha(p, delta, n);
    let sl = layout.sub_layout(&[SPIN, LC])?;
    let target = QState::product(&[spin_up(SPIN), fock_state(LC, opts.lc_dim, 0)?])?.apply(&ideal_gate(alpha, &sl)?)?;
    Ok(HeatingPoint { delta, n, alpha, duration: 2.0 * loop_time(delta, n), infidelity: 1.0 - fidelity(&reduced, &target)? })
}

/// `exp(iα q σx)` on `[spin, lc]`.
pub fn ideal_gate(alpha: f64, layout: &ModeLayout) -> Result<QOperator> {
    let a = embed(&annihilation(layout.dim_of(LC)?)?, layout, LC)?;
    let q = (&a + &a.dagger()).scale_re(FRAC_1_SQRT_2);
    Ok(q.compose(&embed(&pauli(Axis::X), layout, SPIN)?)?.scale(C64::new(0.0, alpha)).expm())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

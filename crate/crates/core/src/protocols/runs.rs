// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Protocol runs packaged as [`ProtocolResult`]s. Each run is repeated with
//! every truncation doubled and the shift of its headline figure attached.

use num_complex::Complex64 as C64;

use super::budget::{full_budget_run, BudgetOptions, BudgetRates};
use super::gates::{lc_spin_concurrence, two_ion_phase_gate};
use super::metrology::{cat_metrology, voltage_extrapolation};
use super::ms::{ms_alpha, ms_sequence};
use super::result::{ProtocolResult, TruncationConvergence};
use super::swap::{jc_cnot_schedule, swap_duration};
use crate::device::DeviceParams;
use crate::dynamics::{evolve_pure, fidelity, EvolutionSpec};
use crate::error::Result;
use crate::hamiltonians::{rwa_hamiltonian, ModelParams, LC, MOTION, SPIN};
use crate::qalgebra::{annihilation, embed, ModeLayout, QState};

fn converge(
    dims: &[usize],
    mut run: impl FnMut(&[usize]) -> Result<(ProtocolResult, f64)>,
) -> Result<ProtocolResult> {
    let (mut result, value) = run(dims)?;
    let doubled: Vec<usize> = dims.iter().map(|d| 2 * d).collect();
    let (_, doubled_value) = run(&doubled)?;
    result.convergence = Some(TruncationConvergence { dims: dims.to_vec(), doubled_dims: doubled, value, doubled_value });
    Ok(result)
}

/// Resonant exchange from `|1, 0⟩` over one swap time with series
/// `P_lc`, `P_motion` and `norm`. Dims are `[lc, motion]`.
pub fn swap_run(p: &ModelParams, dims: [usize; 2], tolerance: f64, samples: usize) -> Result<ProtocolResult> {
    let g = p.effective_coupling();
    converge(&dims, |d| {
        let layout = ModeLayout::lc_motion(d[0], d[1])?;
        let na = number_op(&layout, LC)?;
        let nb = number_op(&layout, MOTION)?;
        let t = swap_duration(g)?;
        let spec = EvolutionSpec::new(rwa_hamiltonian(g, 0.0, &layout)?, t)
            .tolerance(tolerance)
            .uniform_samples(samples)
            .observe("P_lc", na)
            .observe("P_motion", nb);
        let r = evolve_pure(&spec, &QState::basis(&layout, &[1, 0])?)?;
        let f = fidelity(&r.final_state, &QState::basis(&layout, &[0, 1])?)?;
        let mut out = ProtocolResult::new("swap").figure("swap_time", t).figure("coupling", g).figure("transfer_probability", f);
        out.fidelity = Some(f);
        out.times = r.times.clone();
        out.series = r.observables.clone();
        out.series.push(crate::dynamics::ObservableSeries { name: "norm".into(), values: r.norms.clone() });
        Ok((out, f))
    })
}

/// Swap, JC π/2 pulse, swap on `|↓⟩(|0⟩ + |1⟩)/√2`; reports the spin/LC
/// concurrence. Dims are `[lc, motion]`.
pub fn jc_cnot_run(p: &ModelParams, dims: [usize; 2], tolerance: f64) -> Result<ProtocolResult> {
    converge(&dims, |d| {
        let layout = ModeLayout::spin_lc_motion(d[0], d[1])?;
        let schedule = jc_cnot_schedule(p.effective_coupling(), p.omega0, &layout)?;
        let u = schedule.propagator(tolerance)?;
        let v = QState::basis(&layout, &[1, 0, 0])?.as_vector().cloned().unwrap_or_default()
            + QState::basis(&layout, &[1, 1, 0])?.as_vector().cloned().unwrap_or_default();
        let out = QState::normalized(layout.clone(), v)?.apply(&u)?;
        let c = lc_spin_concurrence(&out.reduced(&[SPIN, LC])?)?;
        let r = ProtocolResult::new("jc_cnot")
            .figure("concurrence", c)
            .figure("duration", schedule.total_duration())
            .figure("unitarity_residual", u.unitarity_residual());
        Ok((r, c))
    })
}

/// Echoed bichromatic sequence; the headline figure is the fitted `α`.
/// Dims are `[lc, motion]`.
pub fn ms_run(p: &ModelParams, delta: f64, n: u32, dims: [usize; 2], tolerance: f64) -> Result<ProtocolResult> {
    converge(&dims, |d| {
        let m = ms_sequence(p, delta, n, d[0], d[1], tolerance)?;
        let mut r = ProtocolResult::new("ms")
            .figure("alpha", m.alpha.abs())
            .figure("alpha_formula", ms_alpha(p, delta, n))
            .figure("fit_residual", m.fit_residual)
            .figure("motional_purity", m.motional_purity)
            .figure("phase_spread_forward", m.phase_spread_forward)
            .figure("phase_spread_composite", m.phase_spread_composite)
            .figure("echo_suppression", m.echo_suppression())
            .figure("unitarity_residual", m.composite.unitarity_residual());
        r.warnings = m.warnings.iter().map(|w| format!("{} violated (ratio {:.3})", w.condition, w.ratio)).collect();
        Ok((r, m.alpha.abs()))
    })
}

/// Four-displacement two-ion gate; headline figure is the relative phase.
pub fn phase_gate_run(alpha: C64, lc_dim: usize) -> Result<ProtocolResult> {
    converge(&[lc_dim], |d| {
        let g = two_ion_phase_gate(alpha, d[0])?;
        let mut r = ProtocolResult::new("phase_gate")
            .figure("relative_phase", g.relative_phase)
            .figure("relative_phase_formula", 8.0 * alpha.norm_sqr())
            .figure("lc_vacuum_fidelity", 1.0 - g.residual_displacement)
            .figure("unitarity_residual", g.unitary.unitarity_residual());
        r.warnings = g.warnings.iter().map(truncation_note).collect();
        Ok((r, g.relative_phase))
    })
}

/// Cat-state parity fringe plus the SI voltage scale for `mean_photons`.
pub fn metrology_run(alpha: f64, probe: f64, dim: usize, device: &DeviceParams, mean_photons: f64) -> Result<ProtocolResult> {
    let v = voltage_extrapolation(device, mean_photons)?;
    converge(&[dim], |d| {
        let m = cat_metrology(alpha, probe, 41, d[0])?;
        let mut r = ProtocolResult::new("metrology")
            .figure("fringe_period", m.fringe_period)
            .figure("curvature", m.curvature)
            .figure("mean_photons", v.mean_photons)
            .figure("zero_point_voltage", v.zero_point_voltage)
            .figure("rms_voltage", v.rms_voltage)
            .figure("voltage_resolution", v.resolution);
        r.times = m.probes.clone();
        r.series = vec![crate::dynamics::ObservableSeries { name: "parity".into(), values: m.signal.clone() }];
        r.warnings = m.warnings.iter().map(truncation_note).collect();
        Ok((r, m.fringe_period))
    })
}

/// [`full_budget_run`] with the convergence rerun switched on.
pub fn budget_run(device: &DeviceParams, rates: BudgetRates, opts: &BudgetOptions) -> Result<ProtocolResult> {
    full_budget_run(device, rates, &BudgetOptions { check_convergence: true, ..*opts })
}

fn truncation_note(w: &crate::qalgebra::TruncationWarning) -> String {
    format!("truncation: mean photon number {:.3} above {:.3} for dim {}", w.mean_photons, w.limit, w.dim)
}

fn number_op(layout: &ModeLayout, label: &str) -> Result<crate::qalgebra::QOperator> {
    let a = embed(&annihilation(layout.dim_of(label)?)?, layout, label)?;
    a.dagger().compose(&a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_run_reports_series_and_convergence() {
        let p = ModelParams::scaled_hierarchy();
        let r = swap_run(&p, [3, 3], 1e-10, 11).unwrap();
        assert!(r.fidelity.unwrap() > 1.0 - 1e-8);
        let names: Vec<_> = r.series.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["P_lc", "P_motion", "norm"]);
        assert_eq!(r.times.len(), 11);
        assert!(r.convergence.unwrap().delta() < 1e-9);
    }

    #[test]
    fn phase_gate_run_is_converged() {
        let r = phase_gate_run(C64::new((std::f64::consts::PI / 8.0).sqrt(), 0.0), 16).unwrap();
        assert!(r.convergence.as_ref().unwrap().delta() < 1e-6);
        assert!((r.get("relative_phase").unwrap() - std::f64::consts::PI).abs() < 1e-3);
    }
}

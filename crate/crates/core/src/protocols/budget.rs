// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::result::{ProtocolResult, TruncationConvergence};
use super::swap::{jc_cnot_schedule, jc_duration, swap_duration};
use crate::device::DeviceParams;
use crate::dynamics::{decay_collapse_op, heating_collapse_ops, CollapseOp, HeatingModel};
use crate::error::{Error, Result};
use crate::hamiltonians::{LC, MOTION, SPIN};
use crate::qalgebra::{ModeLayout, QState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BudgetRates {
    /// LC energy decay rate (s⁻¹).
    pub kappa_lc: f64,
    /// Motional heating rate (s⁻¹).
    pub gamma_heat: f64,
}

impl BudgetRates {
    pub fn from_device(d: &DeviceParams) -> Self {
        Self { kappa_lc: d.kappa_lc, gamma_heat: d.gamma_heat }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self { kappa_lc: self.kappa_lc * factor, gamma_heat: self.gamma_heat * factor }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BudgetOptions {
    pub lc_dim: usize,
    pub motion_dim: usize,
    pub tolerance: f64,
    pub heating: HeatingModel,
    /// Repeat at doubled truncations and attach the shift.
    pub check_convergence: bool,
}

impl Default for BudgetOptions {
    fn default() -> Self {
        Self { lc_dim: 3, motion_dim: 3, tolerance: 1e-10, heating: HeatingModel::InfiniteTemperature, check_convergence: false }
    }
}

/// Logical basis `|s, n⟩` for spin `s` and LC `n ∈ {0, 1}`.
const LOGICAL: [[usize; 2]; 4] = [[0, 0], [0, 1], [1, 0], [1, 1]];

/// Swap, JC π/2 pulse, swap under LC decay and motional heating. The
/// fidelity is the process fidelity on `spin ⊗ LC{0,1}` against the
/// dissipation-free schedule, with the motion starting in vacuum and
/// traced out at the end.
pub fn full_budget_run(device: &DeviceParams, rates: BudgetRates, opts: &BudgetOptions) -> Result<ProtocolResult> {
    device.validate()?;
    let g = device.effective_coupling();
    let infidelity = budget_infidelity(device, rates, opts.lc_dim, opts.motion_dim, opts)?;
    let t_swap = swap_duration(g)?;
    let t_pulse = jc_duration(device.omega0, std::f64::consts::FRAC_PI_2)?;
    let mut result = ProtocolResult::new("full_budget")
        .figure("infidelity", infidelity)
        .figure("duration", 2.0 * t_swap + t_pulse)
        .figure("swap_time", t_swap)
        .figure("pulse_time", t_pulse)
        .figure("kappa_lc", rates.kappa_lc)
        .figure("gamma_heat", rates.gamma_heat);
    result.fidelity = Some(1.0 - infidelity);
    if opts.check_convergence {
        let doubled = budget_infidelity(device, rates, 2 * opts.lc_dim, 2 * opts.motion_dim, opts)?;
        result.convergence = Some(TruncationConvergence {
            dims: vec![2, opts.lc_dim, opts.motion_dim],
            doubled_dims: vec![2, 2 * opts.lc_dim, 2 * opts.motion_dim],
            value: infidelity,
            doubled_value: doubled,
        });
    }
    Ok(result)
}

fn budget_infidelity(device: &DeviceParams, rates: BudgetRates, lc_dim: usize, motion_dim: usize, opts: &BudgetOptions) -> Result<f64> {
    if lc_dim < 2 || motion_dim < 2 {
        return Err(Error::InvalidDimension { dim: lc_dim.min(motion_dim), reason: "the logical subspace needs two levels" });
    }
    for (name, v) in [("kappa_lc", rates.kappa_lc), ("gamma_heat", rates.gamma_heat)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter { name, reason: format!("must be finite and >= 0, got {v}") });
        }
    }
    let layout = ModeLayout::spin_lc_motion(lc_dim, motion_dim)?;
    let schedule = jc_cnot_schedule(device.effective_coupling(), device.omega0, &layout)?;
    let mut collapse = vec![CollapseOp { operator: decay_collapse_op(&layout, LC)?, rate: rates.kappa_lc }];
    collapse.extend(heating_collapse_ops(&layout, MOTION, rates.gamma_heat, opts.heating)?);
    collapse.retain(|c| c.rate > 0.0);

    let ideal = schedule.propagator(opts.tolerance)?;
    let sl = layout.sub_layout(&[SPIN, LC])?;
    let full_index = |d: &[usize; 2]| layout.index(&[d[0], d[1], 0]);
    // The JC pulse moves |↑,1⟩ to |↓,2⟩, so the ideal map is an isometry
    // from the logical block into all of spin ⊗ LC with the motion back in
    // vacuum.
    let v = Array2::from_shape_fn((sl.total_dim(), 4), |(r, c)| {
        let d = sl.digits(r);
        ideal.matrix()[[layout.index(&[d[0], d[1], 0]), full_index(&LOGICAL[c])]]
    });

    let channel = |coeffs: &[C64; 4]| -> Result<Array2<C64>> {
        let mut v = Array1::zeros(layout.total_dim());
        for (k, d) in LOGICAL.iter().enumerate() {
            v[full_index(d)] = coeffs[k];
        }
        let psi = QState::normalized(layout.clone(), v)?;
        let run = schedule.run_lindblad(&psi, &collapse, opts.tolerance)?;
        Ok(run.state.reduced(&[SPIN, LC])?.density_matrix())
    };
    let unit = |k: usize, z: C64| {
        let mut c = [C64::new(0.0, 0.0); 4];
        c[k] = z;
        c
    };
    let one = C64::new(1.0, 0.0);
    let diag: Vec<Array2<C64>> = (0..4).map(|k| channel(&unit(k, one))).collect::<Result<_>>()?;

    // F = (1/d²) Σ_ij ⟨i|V† Φ(|i⟩⟨j|) V|j⟩ with |i⟩⟨j| = ρ₊ + iρ₊ᵢ − (1+i)/2 (ρᵢ + ρⱼ).
    let mut total = C64::new(0.0, 0.0);
    let vd = v.t().mapv(|z| z.conj());
    for i in 0..4 {
        for j in 0..4 {
            let image = if i == j {
                diag[i].clone()
            } else {
                let mut plus = unit(i, one);
                plus[j] = one;
                let mut plus_i = unit(i, one);
                plus_i[j] = C64::new(0.0, 1.0);
                let rp = channel(&plus)?;
                let rpi = channel(&plus_i)?;
                &rp + &rpi.mapv(|z| z * C64::new(0.0, 1.0)) - (&diag[i] + &diag[j]).mapv(|z| z * C64::new(0.5, 0.5))
            };
            total += vd.dot(&image).dot(&v)[[i, j]];
        }
    }
    Ok(1.0 - total.re / 16.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rates_are_ideal() {
        let d = DeviceParams::operating_point();
        let r = full_budget_run(&d, BudgetRates { kappa_lc: 0.0, gamma_heat: 0.0 }, &BudgetOptions::default()).unwrap();
        assert!(r.get("infidelity").unwrap().abs() < 1e-6);
    }

    #[test]
    fn lc_decay_alone_costs_fidelity() {
        let d = DeviceParams::operating_point();
        let r = full_budget_run(&d, BudgetRates { kappa_lc: 2e3, gamma_heat: 0.0 }, &BudgetOptions::default()).unwrap();
        let inf = r.get("infidelity").unwrap();
        assert!(inf > 1e-3 && inf < 0.1, "{inf}");
    }
}

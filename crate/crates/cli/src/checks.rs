// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Invariant suite behind `ionlc check`.

use ionlc_core::dynamics::{
    decay_collapse_op, evolve_lindblad, evolve_propagator, evolve_pure, fidelity, heating_collapse_ops, unitary_fidelity,
    EvolutionSpec, HeatingModel,
};
use ionlc_core::hamiltonians::{
    frame_transformation, interaction_frame_hamiltonian, lab_frame_hamiltonian, ms_hamiltonian, rwa_hamiltonian,
    rwa_hamiltonian_complex, KappaForm, ModelParams, LC, MOTION,
};
use ionlc_core::protocols::{ms_sequence, swap_schedule};
use ionlc_core::qalgebra::{annihilation, coherent_state, displacement, ModeLayout, QState};
use ionlc_core::C64;

use crate::emit::CheckOutcome;
use crate::error::Result;

fn outcome(name: &str, pass: bool, detail: String) -> CheckOutcome {
    CheckOutcome { name: name.into(), pass, detail }
}

fn commutator_check() -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for n in 2..=24 {
        let a = annihilation(n)?;
        let c = a.commutator(&a.dagger())?;
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((c.element(i, j) - C64::new(want, 0.0)).norm());
            }
        }
    }
    Ok(outcome("[a, a†] = 1 below the truncation edge", worst < 1e-12, format!("max deviation {worst:e}")))
}

fn displacement_check() -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for dim in [16usize, 24, 32] {
        let amp = (dim as f64 / 8.0).sqrt();
        let d = displacement(C64::from_polar(amp, 0.7), dim)?.value;
        let dd = d.dagger().compose(&d)?;
        for i in 0..dim / 2 {
            for j in 0..dim / 2 {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dd.element(i, j) - C64::new(want, 0.0)).norm());
            }
        }
    }
    Ok(outcome("D†D = I on the lower half for |α|² ≤ dim/8", worst < 1e-8, format!("max deviation {worst:.2e}")))
}

fn hermiticity_check(p: &ModelParams) -> Result<CheckOutcome> {
    let lm = ModeLayout::lc_motion(3, 3)?;
    let slm = ModeLayout::spin_lc_motion(3, 3)?;
    let hams = [
        lab_frame_hamiltonian(p, &lm)?,
        interaction_frame_hamiltonian(p, &lm, KappaForm::Exact)?,
        interaction_frame_hamiltonian(p, &lm, KappaForm::FirstOrder)?,
        rwa_hamiltonian(p.effective_coupling(), p.detuning(), &lm)?,
        ms_hamiltonian(p, std::f64::consts::TAU * 5.0, &slm)?,
    ];
    let worst = (0..100)
        .map(|k| 0.1 * k as f64 + 0.013)
        .flat_map(|t| hams.iter().map(move |h| h.hermiticity_residual(t)))
        .fold(0.0, f64::max);
    Ok(outcome("Hamiltonians Hermitian at 100 times", worst < 1e-12, format!("max residual {worst:.2e}")))
}

fn determinism_check() -> Result<CheckOutcome> {
    let same = coherent_state(LC, C64::new(0.7, -0.2), 24)?.value == coherent_state(LC, C64::new(0.7, -0.2), 24)?.value
        && displacement(C64::new(0.3, 0.1), 20)?.value == displacement(C64::new(0.3, 0.1), 20)?.value;
    Ok(outcome("constructors are bit-identical on repeat", same, String::new()))
}

fn lindblad_check(p: &ModelParams) -> Result<CheckOutcome> {
    let layout = ModeLayout::lc_motion(3, 4)?;
    let h = rwa_hamiltonian(p.effective_coupling(), 0.0, &layout)?;
    let spec = EvolutionSpec::new(h, p.swap_time())
        .collapse(decay_collapse_op(&layout, LC)?, 0.3)
        .collapse_all(heating_collapse_ops(&layout, MOTION, 0.2, HeatingModel::InfiniteTemperature)?);
    let r = evolve_lindblad(&spec, &QState::basis(&layout, &[1, 1])?.to_mixed())?;
    Ok(outcome(
        "Lindblad trace, Hermiticity and positivity",
        r.conservation_error < 1e-8 && r.hermiticity < 1e-10 && r.min_eigenvalue > -1e-8,
        format!("trace {:.1e}, herm {:.1e}, λ_min {:.1e}", r.conservation_error, r.hermiticity, r.min_eigenvalue),
    ))
}

fn swap_check(p: &ModelParams, tolerance: f64) -> Result<CheckOutcome> {
    let layout = ModeLayout::lc_motion(3, 3)?;
    let out = swap_schedule(p.effective_coupling(), &layout)?.run_pure(&QState::basis(&layout, &[1, 0])?, tolerance)?;
    let f = fidelity(&out, &QState::basis(&layout, &[0, 1])?)?;
    Ok(outcome("swap transfers |1,0⟩ → |0,1⟩ above 1 − 1e−6", f > 1.0 - 1e-6, format!("P = {f:.12}")))
}

fn frame_check(p: &ModelParams, tolerance: f64) -> Result<CheckOutcome> {
    let layout = ModeLayout::lc_motion(3, 3)?;
    let t = p.swap_time();
    let lab = evolve_propagator(&lab_frame_hamiltonian(p, &layout)?, t, tolerance)?;
    let int = evolve_propagator(&interaction_frame_hamiltonian(p, &layout, KappaForm::Exact)?, t, tolerance)?;
    let mapped = frame_transformation(p, &layout, t)?.compose(&lab)?.compose(&frame_transformation(p, &layout, 0.0)?.dagger())?;
    let f = unitary_fidelity(&mapped, &int)?;
    Ok(outcome("lab and interaction frames agree over one swap", f >= 1.0 - 1e-4, format!("1 − F = {:.3e}", 1.0 - f)))
}

fn rwa_check(p: &ModelParams, tolerance: f64, label: &str) -> Result<CheckOutcome> {
    let layout = ModeLayout::lc_motion(4, 4)?;
    let g = p.effective_coupling();
    let psi0 = QState::basis(&layout, &[1, 0])?;
    let full = evolve_pure(&EvolutionSpec::new(interaction_frame_hamiltonian(p, &layout, KappaForm::Exact)?, p.swap_time()).tolerance(tolerance), &psi0)?;
    let rwa = evolve_pure(&EvolutionSpec::new(rwa_hamiltonian_complex(C64::new(0.0, -g), 0.0, &layout)?, p.swap_time()).tolerance(tolerance), &psi0)?;
    let f = fidelity(&full.final_state, &rwa.final_state)?;
    Ok(outcome(&format!("RWA matches full evolution ≥ 0.99 ({label})"), f >= 0.99, format!("1 − F = {:.3e}", 1.0 - f)))
}

fn echo_check(p: &ModelParams, tolerance: f64) -> Result<CheckOutcome> {
    let m = ms_sequence(p, std::f64::consts::TAU * 5.0, 1, 7, 8, tolerance)?;
    let s = m.echo_suppression();
    Ok(outcome("echo suppresses the q² phase spread ≥ 100×", s >= 100.0, format!("{s:.2e}×")))
}

/// Runs every check; `expensive` adds the `ω_i/ω_LC = 1e−3` RWA spot check.
pub fn invariant_suite(p: &ModelParams, tolerance: f64, expensive: bool) -> Result<Vec<CheckOutcome>> {
    let mut out = vec![
        commutator_check()?,
        displacement_check()?,
        hermiticity_check(p)?,
        determinism_check()?,
        lindblad_check(p)?,
        swap_check(p, tolerance)?,
        frame_check(p, tolerance)?,
        rwa_check(p, tolerance, "configured model")?,
        echo_check(p, tolerance)?,
    ];
    if expensive {
        let slow = ModelParams::with_ratio(1e-3)?;
        out.push(rwa_check(&slow, tolerance, "ω_i/ω_LC = 1e−3")?);
    }
    Ok(out)
}

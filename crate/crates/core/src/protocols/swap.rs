// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::schedule::PulseSchedule;
use crate::error::{ensure_positive, Result};
use crate::hamiltonians::{rwa_hamiltonian, Frame, TimeDependentHamiltonian, MOTION, SPIN};
use crate::qalgebra::{annihilation, embed, sigma_minus, sigma_plus, ModeLayout, QOperator};

/// Duration of a full LC/motion exchange at coupling `g`: `π/(2g)`.
pub fn swap_duration(g: f64) -> Result<f64> {
    Ok(PI / (2.0 * ensure_positive("g", g)?))
}

/// One resonant exchange: `|1,0⟩ → −i|0,1⟩`. `layout` must contain the
/// `lc` and `motion` slots.
pub fn swap_schedule(g: f64, layout: &ModeLayout) -> Result<PulseSchedule> {
    let t = swap_duration(g)?;
    PulseSchedule::new(layout.clone()).evolve(rwa_hamiltonian(g, 0.0, layout)?, t)
}

/// Closed-form swap propagator `exp[−iπ/2 (a b† + a† b)]`.
pub fn swap_unitary(layout: &ModeLayout) -> Result<QOperator> {
    let h = rwa_hamiltonian(1.0, 0.0, layout)?;
    Ok(h.at(0.0).evolution(PI / 2.0))
}

/// `S U S`. For a `U` built from motion operators this is `U(b → i a)`
/// followed by the total parity `S²`.
pub fn conjugate_by_swaps(u: &QOperator) -> Result<QOperator> {
    let s = swap_unitary(u.layout())?;
    s.compose(u)?.compose(&s)
}

/// `(Ω0/2)(b σ⁺ + b† σ⁻)`.
pub fn jc_hamiltonian(omega0: f64, layout: &ModeLayout) -> Result<TimeDependentHamiltonian> {
    ensure_positive("omega0", omega0)?;
    let b = embed(&annihilation(layout.dim_of(MOTION)?)?, layout, MOTION)?;
    let sp = embed(&sigma_plus(), layout, SPIN)?;
    let sm = embed(&sigma_minus(), layout, SPIN)?;
    let op = &b.compose(&sp)? + &b.dagger().compose(&sm)?;
    let mut h = TimeDependentHamiltonian::new(layout.clone(), Frame::Rotating);
    h.add_static(op.scale(C64::new(omega0 / 2.0, 0.0)))?;
    Ok(h)
}

/// Duration of a JC pulse of area `Ω0 t = θ`.
pub fn jc_duration(omega0: f64, area: f64) -> Result<f64> {
    Ok(area / ensure_positive("omega0", omega0)?)
}

/// Swap, JC pulse of area `π/2`, swap.
pub fn jc_cnot_schedule(g: f64, omega0: f64, layout: &ModeLayout) -> Result<PulseSchedule> {
    jc_schedule(g, omega0, PI / 2.0, layout)
}

/// Swap, JC pulse of the given area, swap.
pub fn jc_schedule(g: f64, omega0: f64, area: f64, layout: &ModeLayout) -> Result<PulseSchedule> {
    let swap = swap_schedule(g, layout)?;
    swap.clone()
        .evolve(jc_hamiltonian(omega0, layout)?, jc_duration(omega0, area)?)?
        .then(&swap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::fidelity;
    use crate::protocols::lc_spin_concurrence;
    use crate::hamiltonians::LC;
    use crate::qalgebra::{displacement, pauli, Axis, QState};

    fn lm() -> ModeLayout {
        ModeLayout::lc_motion(4, 4).unwrap()
    }

    #[test]
    fn swap_time_matches_coupling() {
        let g = 2.0 * PI * 40e3;
        assert!((swap_duration(g).unwrap() - 6.25e-6).abs() < 1e-15);
        assert!(swap_duration(0.0).is_err());
    }

    #[test]
    fn swap_moves_excitation() {
        let l = lm();
        let g = 2.0 * PI * 40e3;
        let u = swap_schedule(g, &l).unwrap().propagator(1e-10).unwrap();
        let out = QState::basis(&l, &[1, 0]).unwrap().apply(&u).unwrap();
        let v = out.as_vector().unwrap();
        let target = l.index(&[0, 1]);
        assert!((v[target] - C64::new(0.0, -1.0)).norm() < 1e-8);
        let twice = u.compose(&u).unwrap();
        let back = QState::basis(&l, &[1, 0]).unwrap().apply(&twice).unwrap();
        assert!((back.as_vector().unwrap()[l.index(&[1, 0])] + 1.0).norm() < 1e-8);
        assert!(u.max_abs_diff(&swap_unitary(&l).unwrap()) < 1e-8);
    }

    #[test]
    fn conjugation_of_identity_is_double_swap() {
        let l = lm();
        let s = swap_unitary(&l).unwrap();
        let c = conjugate_by_swaps(&QOperator::identity(&l)).unwrap();
        assert!(c.max_abs_diff(&s.compose(&s).unwrap()) < 1e-12);
    }

    #[test]
    fn conjugation_leaves_spin_flip() {
        let l = ModeLayout::spin_lc_motion(3, 3).unwrap();
        let sx = embed(&pauli(Axis::X), &l, SPIN).unwrap();
        let s = swap_unitary(&l).unwrap();
        let c = conjugate_by_swaps(&sx).unwrap();
        // S σx S = σx S², and S² is ±1 on each excitation sector.
        assert!(c.max_abs_diff(&sx.compose(&s.compose(&s).unwrap()).unwrap()) < 1e-12);
        let psi = QState::basis(&l, &[0, 1, 0]).unwrap();
        let out = psi.apply(&c).unwrap();
        let expect = psi.apply(&sx).unwrap();
        assert!((fidelity(&out, &expect).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conjugated_displacement_acts_on_lc() {
        let l = ModeLayout::lc_motion(12, 12).unwrap();
        let beta = C64::new(0.3, -0.4);
        let d = embed(&displacement(beta, 12).unwrap().value, &l, MOTION).unwrap();
        let c = conjugate_by_swaps(&d).unwrap();
        let out = QState::basis(&l, &[0, 0]).unwrap().apply(&c).unwrap();
        let a = embed(&annihilation(12).unwrap(), &l, LC).unwrap();
        let b = embed(&annihilation(12).unwrap(), &l, MOTION).unwrap();
        // ⟨a⟩ = −i β and the motion stays in vacuum.
        assert!((out.expectation(&a).unwrap() - C64::new(0.0, -1.0) * beta).norm() < 1e-6);
        assert!(out.expectation(&b).unwrap().norm() < 1e-6);
    }

    #[test]
    fn jc_dark_state_and_rabi() {
        let l = ModeLayout::new([(SPIN, 2), (MOTION, 5)]).unwrap();
        let omega0 = 2.0 * PI * 0.5;
        let h = jc_hamiltonian(omega0, &l).unwrap();
        // |↓, 0⟩ has no partner.
        let dark = QState::basis(&l, &[1, 0]).unwrap();
        let u = h.at(0.0).evolution(3.7);
        assert!((fidelity(&dark.apply(&u).unwrap(), &dark).unwrap() - 1.0).abs() < 1e-12);
        // |↓, n⟩ ↔ |↑, n−1⟩ at frequency Ω0 √n.
        for n in 1..4usize {
            let psi = QState::basis(&l, &[1, n]).unwrap();
            let up = QState::basis(&l, &[0, n - 1]).unwrap();
            for &t in &[0.1, 0.37, 0.8] {
                let out = psi.apply(&h.at(0.0).evolution(t)).unwrap();
                let p = fidelity(&out, &up).unwrap();
                let expect = (omega0 * (n as f64).sqrt() * t / 2.0).sin().powi(2);
                assert!((p - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn jc_cnot_entangles_spin_and_lc() {
        let l = ModeLayout::spin_lc_motion(3, 3).unwrap();
        let sched = jc_cnot_schedule(2.0 * PI * 0.2, 2.0 * PI * 0.5, &l).unwrap();
        let u = sched.propagator(1e-10).unwrap();
        assert!(u.unitarity_residual() < 1e-7);
        // |↓⟩(|0⟩ + |1⟩)/√2 on spin ⊗ LC.
        let v = QState::basis(&l, &[1, 0, 0]).unwrap().as_vector().unwrap()
            + QState::basis(&l, &[1, 1, 0]).unwrap().as_vector().unwrap();
        let psi = QState::normalized(l.clone(), v).unwrap();
        let out = psi.apply(&u).unwrap();
        let rho = out.reduced(&[SPIN, LC]).unwrap();
        assert!(lc_spin_concurrence(&rho).unwrap() > 0.1);
    }
}

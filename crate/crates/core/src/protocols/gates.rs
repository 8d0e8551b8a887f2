// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::dynamics::concurrence;
use crate::error::{Error, Result};
use crate::hamiltonians::{LC, SPIN};
use crate::qalgebra::{annihilation, embed, pauli, Axis, ModeLayout, QOperator, QState, TruncationWarning};

pub const SPIN1: &str = "spin1";
pub const SPIN2: &str = "spin2";

/// `exp[(α a† − α* a) σx]` on a layout containing `spin` and `lc`.
pub fn spin_dependent_displacement(alpha: C64, layout: &ModeLayout) -> Result<QOperator> {
    let sx = embed(&pauli(Axis::X), layout, SPIN)?;
    Ok(displacement_generator(alpha, layout)?.compose(&sx)?.expm())
}

/// `α a† − α* a` on the LC slot.
fn displacement_generator(alpha: C64, layout: &ModeLayout) -> Result<QOperator> {
    let a = embed(&annihilation(layout.dim_of(LC)?)?, layout, LC)?;
    Ok(&a.dagger().scale(alpha) - &a.scale(alpha.conj()))
}

/// Layout `[spin1, spin2, lc]` for two ions sharing one LC mode.
pub fn two_ion_layout(lc_dim: usize) -> Result<ModeLayout> {
    ModeLayout::new([(SPIN1, 2), (SPIN2, 2), (LC, lc_dim)])
}

#[derive(Debug, Clone)]
pub struct PhaseGate {
    pub unitary: QOperator,
    /// Phase of `|↑↑⟩` relative to `|↑↓⟩` with the LC starting and ending
    /// in vacuum.
    pub relative_phase: f64,
    /// Population left outside LC vacuum for an `|↑↑, 0⟩` input.
    pub residual_displacement: f64,
    pub warnings: Vec<TruncationWarning>,
}

/// Displacements `D(L), D(iL), D(−L), D(−iL)` in time order with
/// `L = α J_z`, `J_z = σz⁽¹⁾ + σz⁽²⁾`. The loop closes and leaves
/// `exp(2i|α|² J_z²)`, so aligned spins gain `8|α|²` over anti-aligned.
pub fn two_ion_phase_gate(alpha: C64, lc_dim: usize) -> Result<PhaseGate> {
    let layout = two_ion_layout(lc_dim)?;
    let jz = &embed(&pauli(Axis::Z), &layout, SPIN1)? + &embed(&pauli(Axis::Z), &layout, SPIN2)?;
    let mut u = QOperator::identity(&layout);
    for k in [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)] {
        let d = displacement_generator(alpha * k, &layout)?.compose(&jz)?.expm();
        u = d.compose(&u)?;
    }
    let uu = QState::basis(&layout, &[0, 0, 0])?.apply(&u)?;
    let ud = QState::basis(&layout, &[0, 1, 0])?.apply(&u)?;
    let amp_uu = uu.as_vector().map(|v| v[layout.index(&[0, 0, 0])]).unwrap_or_default();
    let amp_ud = ud.as_vector().map(|v| v[layout.index(&[0, 1, 0])]).unwrap_or_default();
    let relative_phase = (amp_uu / amp_ud).arg().rem_euclid(std::f64::consts::TAU);
    let residual_displacement = 1.0 - amp_uu.norm_sqr();
    // Largest excursion is |L| = 2|α|(1 + √2)/√2 along the square loop.
    let reach = 4.0 * alpha.norm_sqr() * (1.0 + std::f64::consts::SQRT_2).powi(2) / 2.0;
    let warnings = TruncationWarning::check(reach, lc_dim).into_iter().collect();
    Ok(PhaseGate { unitary: u, relative_phase, residual_displacement, warnings })
}

/// Concurrence of the `spin ⊗ LC{0,1}` block of a state on `[spin, lc]`.
/// Weight outside the block is dropped without renormalising.
pub fn lc_spin_concurrence(rho: &QState) -> Result<f64> {
    let l = rho.layout();
    if l.labels().len() != 2 || l.slot(SPIN)? != 0 || l.slot(LC)? != 1 {
        return Err(Error::LayoutMismatch("expected a [spin, lc] state".into()));
    }
    let m = rho.density_matrix();
    let keep = [l.index(&[0, 0]), l.index(&[0, 1]), l.index(&[1, 0]), l.index(&[1, 1])];
    concurrence(&Array2::from_shape_fn((4, 4), |(i, j)| m[[keep[i], keep[j]]]))
}

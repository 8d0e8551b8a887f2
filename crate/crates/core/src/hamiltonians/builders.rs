// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Hamiltonian builders.
//!
//! Lab frame, with `A`, `B` the LC and motional annihilation operators:
//!
//! ```text
//! H = ω_LC (1 − ⅔η sin νt) A†A + ω_i B†B + g0 (1 + ⅔η sin νt)(A + A†)(B + B†)
//! ```
//!
//! Capacitance rising with `sin νt` lowers the LC frequency, hence the minus
//! sign on the first term. The transformation
//! `U(t) = exp[i θ(t) A†A + i ω_i t B†B]`, `θ(t) = ω_LC (t + (2η/3ν) cos νt)`,
//! removes both free terms exactly and leaves
//!
//! ```text
//! H_I = g0 [κ(t) e^{−iω_LC t} a + h.c.](b e^{−iω_i t} + h.c.)
//! κ(t) = (1 + ⅔η sin νt) exp(−i (2η ω_LC / 3ν) cos νt)
//! ```
//!
//! whose first-order expansion is `1 + (2η/3)(sin νt − i (ω_LC/ν) cos νt)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::model::ModelParams;
use super::td::{Frame, TimeDependentHamiltonian};
use crate::error::{Error, Result};
use crate::qalgebra::{annihilation, embed, number, pauli, Axis, ModeLayout, QOperator};

pub const LC: &str = "lc";
pub const MOTION: &str = "motion";
pub const SPIN: &str = "spin";

/// Ratio above which a `≪` ordering is reported as violated.
pub const REGIME_RATIO: f64 = 0.2;

fn mode_ops(layout: &ModeLayout, label: &str) -> Result<QOperator> {
    if !layout.contains(label) {
        return Err(Error::LabelNotFound(label.to_string()));
    }
    embed(&annihilation(layout.dim_of(label)?)?, layout, label)
}

fn number_op(layout: &ModeLayout, label: &str) -> Result<QOperator> {
    embed(&number(layout.dim_of(label)?)?, layout, label)
}

/// Which form of the modulation factor `κ(t)` the interaction frame uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum KappaForm {
    /// Exact image of the lab frame under `U(t)`.
    #[default]
    Exact,
    /// Expansion to first order in `η`.
    FirstOrder,
}

pub fn kappa(p: &ModelParams, form: KappaForm, t: f64) -> C64 {
    let s = (p.nu * t).sin();
    let c = (p.nu * t).cos();
    let x = 2.0 * p.eta * p.omega_lc / (3.0 * p.nu);
    match form {
        KappaForm::Exact => C64::from_polar(1.0 + 2.0 / 3.0 * p.eta * s, -x * c),
        KappaForm::FirstOrder => C64::new(1.0 + 2.0 / 3.0 * p.eta * s, -x * c),
    }
}

/// Phase `θ(t)` of the LC rotation in `U(t)`.
pub fn lc_phase(p: &ModelParams, t: f64) -> f64 {
    p.omega_lc * (t + 2.0 * p.eta / (3.0 * p.nu) * (p.nu * t).cos())
}

pub fn lab_frame_hamiltonian(p: &ModelParams, layout: &ModeLayout) -> Result<TimeDependentHamiltonian> {
    p.validate()?;
    let a = mode_ops(layout, LC)?;
    let b = mode_ops(layout, MOTION)?;
    let na = number_op(layout, LC)?;
    let nb = number_op(layout, MOTION)?;
    let (eta, nu) = (p.eta, p.nu);
    let mut h = TimeDependentHamiltonian::new(layout.clone(), Frame::Lab);
    h.add_term(na.scale_re(p.omega_lc), Arc::new(move |t| C64::new(1.0 - 2.0 / 3.0 * eta * (nu * t).sin(), 0.0)))?;
    h.add_static(nb.scale_re(p.omega_i))?;
    let coupling = (&a + &a.dagger()).compose(&(&b + &b.dagger()))?.scale_re(p.g0);
    h.add_term(coupling, Arc::new(move |t| C64::new(1.0 + 2.0 / 3.0 * eta * (nu * t).sin(), 0.0)))?;
    Ok(h)
}

pub fn interaction_frame_hamiltonian(
    p: &ModelParams,
    layout: &ModeLayout,
    form: KappaForm,
) -> Result<TimeDependentHamiltonian> {
    p.validate()?;
    let a = mode_ops(layout, LC)?;
    let b = mode_ops(layout, MOTION)?;
    let p = *p;
    let mut h = TimeDependentHamiltonian::new(layout.clone(), Frame::Interaction);
    // a b† and a b carry e^{−i(ω_LC ∓ ω_i)t} κ(t); their adjoints complete H.
    let ab_dag = a.compose(&b.dagger())?.scale_re(p.g0);
    h.add_hermitian_pair(
        ab_dag,
        Arc::new(move |t| kappa(&p, form, t) * C64::from_polar(1.0, -(p.omega_lc - p.omega_i) * t)),
    )?;
    let ab = a.compose(&b)?.scale_re(p.g0);
    h.add_hermitian_pair(
        ab,
        Arc::new(move |t| kappa(&p, form, t) * C64::from_polar(1.0, -(p.omega_lc + p.omega_i) * t)),
    )?;
    Ok(h)
}

/// `U(t)` mapping lab-frame states into the interaction frame.
pub fn frame_transformation(p: &ModelParams, layout: &ModeLayout, t: f64) -> Result<QOperator> {
    let na = number_op(layout, LC)?;
    let nb = number_op(layout, MOTION)?;
    let theta = lc_phase(p, t);
    let n = layout.total_dim();
    let mut m = ndarray::Array2::zeros((n, n));
    for k in 0..n {
        let phase = theta * na.element(k, k).re + p.omega_i * t * nb.element(k, k).re;
        m[[k, k]] = C64::from_polar(1.0, phase);
    }
    QOperator::new(layout.clone(), m)
}

/// Coefficient `c` of `e^{iΔt} a b†` in the interaction frame after
/// discarding every rotating term: the `e^{iνt}` Fourier component of
/// `g0 κ(t)`. To first order `c = −i (η g0 / 3)(1 + ω_LC/ν)`.
pub fn resonant_coupling(p: &ModelParams, form: KappaForm) -> C64 {
    const SAMPLES: usize = 4096;
    let period = 2.0 * PI / p.nu;
    let sum: C64 = (0..SAMPLES)
        .map(|k| {
            let t = period * k as f64 / SAMPLES as f64;
            kappa(p, form, t) * C64::from_polar(1.0, -p.nu * t)
        })
        .sum();
    sum * (p.g0 / SAMPLES as f64)
}

/// Beam splitter `g e^{iΔt} a b† + h.c.` with real positive `g`.
pub fn rwa_hamiltonian(g: f64, delta: f64, layout: &ModeLayout) -> Result<TimeDependentHamiltonian> {
    rwa_hamiltonian_complex(C64::new(g, 0.0), delta, layout)
}

/// Beam splitter `c e^{iΔt} a b† + h.c.` with complex coupling `c`.
pub fn rwa_hamiltonian_complex(coupling: C64, delta: f64, layout: &ModeLayout) -> Result<TimeDependentHamiltonian> {
    let a = mode_ops(layout, LC)?;
    let b = mode_ops(layout, MOTION)?;
    let mut h = TimeDependentHamiltonian::new(layout.clone(), Frame::Rotating);
    let op = a.compose(&b.dagger())?;
    if delta == 0.0 {
        let op = op.scale(coupling);
        h.add_static(&op + &op.dagger())?;
    } else {
        h.add_hermitian_pair(op, Arc::new(move |t| coupling * C64::from_polar(1.0, delta * t)))?;
    }
    Ok(h)
}

/// `M = (2ηg0/3) q + (Ω0/4) σx` with `q = (a + a†)/√2`.
pub fn ms_generator(p: &ModelParams, layout: &ModeLayout) -> Result<QOperator> {
    let a = mode_ops(layout, LC)?;
    let q = (&a + &a.dagger()).scale_re(FRAC_1_SQRT_2);
    let sx = embed(&pauli(Axis::X), layout, SPIN)?;
    Ok(&q.scale_re(p.effective_coupling()) + &sx.scale_re(p.omega0 / 4.0))
}

/// `H = √2 M (x cos δt + p sin δt) = M (b e^{−iδt} + b† e^{iδt})`, in the
/// frame rotating with the motion.
pub fn ms_hamiltonian(p: &ModelParams, delta: f64, layout: &ModeLayout) -> Result<TimeDependentHamiltonian> {
    p.validate()?;
    if delta == 0.0 || !delta.is_finite() {
        return Err(Error::InvalidParameter { name: "delta", reason: format!("must be finite and nonzero, got {delta}") });
    }
    let m = ms_generator(p, layout)?;
    let b = mode_ops(layout, MOTION)?;
    let mut h = TimeDependentHamiltonian::new(layout.clone(), Frame::Rotating);
    h.add_hermitian_pair(m.compose(&b)?, Arc::new(move |t| C64::from_polar(1.0, -delta * t)))?;
    let d = delta.abs();
    if p.omega0 / d > REGIME_RATIO {
        h.warn("Ω0 ≪ |δ|", p.omega0 / d);
    }
    if d / p.omega_i > REGIME_RATIO {
        h.warn("|δ| ≪ ω_i", d / p.omega_i);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::device::constants::TWO_PI;
    use crate::qalgebra::QState;

    fn layout() -> ModeLayout {
        ModeLayout::lc_motion(4, 5).unwrap()
    }

    fn hermitian_everywhere(h: &TimeDependentHamiltonian) {
        for k in 0..100 {
            let t = 0.0137 * k as f64 + 0.001 * (k * k) as f64;
            assert!(h.hermiticity_residual(t) < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn lab_frame_spectrum_and_coupling() {
        let p = ModelParams::new(7.0, 1.3, 5.7, 0.0, 0.0, 0.0).unwrap();
        let h = lab_frame_hamiltonian(&p, &layout()).unwrap();
        let mut ev = h.at(0.4).eigenvalues_hermitian();
        let mut expected: Vec<f64> = (0..4).flat_map(|n| (0..5).map(move |m| 7.0 * n as f64 + 1.3 * m as f64)).collect();
        ev.sort_by(f64::total_cmp);
        expected.sort_by(f64::total_cmp);
        for (a, b) in ev.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
        let p = ModelParams::scaled_hierarchy();
        let l = layout();
        let h = lab_frame_hamiltonian(&p, &l).unwrap();
        let hint = &h.at(0.0) - &lab_frame_hamiltonian(&ModelParams { g0: 0.0, ..p }, &l).unwrap().at(0.0);
        let (r, c) = (l.index(&[1, 0]), l.index(&[0, 1]));
        assert!((hint.element(r, c).re - p.g0).abs() < 1e-12);
        hermitian_everywhere(&h);
    }

    #[test]
    fn envelope_period_average() {
        let p = ModelParams::scaled_hierarchy();
        let h = lab_frame_hamiltonian(&p, &layout()).unwrap();
        let n = 1000;
        let period = TWO_PI / p.nu;
        let avg: f64 = (0..n).map(|k| (h.terms()[2].envelope)(period * k as f64 / n as f64).re).sum::<f64>() / n as f64;
        assert!((avg - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kappa_values() {
        let p = ModelParams::scaled_hierarchy();
        let flat = p.with_eta(0.0).unwrap();
        for form in [KappaForm::Exact, KappaForm::FirstOrder] {
            assert_eq!(kappa(&flat, form, 0.3), C64::new(1.0, 0.0));
            let k = kappa(&p, form, PI / 2.0 / p.nu);
            assert!((k - C64::new(1.0 + 0.2, 0.0)).norm() < 1e-12);
        }
        let h = interaction_frame_hamiltonian(&p, &layout(), KappaForm::Exact).unwrap();
        hermitian_everywhere(&h);
    }

    #[test]
    fn resonant_coupling_first_order() {
        let p = ModelParams::scaled_hierarchy();
        let c = resonant_coupling(&p, KappaForm::FirstOrder);
        let expected = C64::new(0.0, -p.eta * p.g0 / 3.0 * (1.0 + p.omega_lc / p.nu));
        assert!((c - expected).norm() < 1e-12 * p.g0);
        let exact = resonant_coupling(&p, KappaForm::Exact);
        assert!((exact.norm() / p.effective_coupling() - 1.0).abs() < 0.03);
    }

    #[test]
    fn frame_transformation_removes_free_terms() {
        let p = ModelParams::scaled_hierarchy();
        let l = layout();
        let lab = lab_frame_hamiltonian(&p, &l).unwrap();
        let int = interaction_frame_hamiltonian(&p, &l, KappaForm::Exact).unwrap();
        let t = 0.123;
        let u = frame_transformation(&p, &l, t).unwrap();
        let dt = 1e-7;
        let du = (&frame_transformation(&p, &l, t + dt).unwrap() - &frame_transformation(&p, &l, t - dt).unwrap())
            .scale_re(0.5 / dt);
        let transformed = &u.compose(&lab.at(t)).unwrap().compose(&u.dagger()).unwrap()
            + &du.compose(&u.dagger()).unwrap().scale(C64::new(0.0, 1.0));
        assert!(transformed.max_abs_diff(&int.at(t)) < 1e-5 * p.omega_lc);
    }

    #[test]
    fn rwa_properties() {
        let l = layout();
        let h = rwa_hamiltonian(0.7, 0.0, &l).unwrap().at(0.0);
        let total = &number_op(&l, LC).unwrap() + &number_op(&l, MOTION).unwrap();
        assert!(h.commutator(&total).unwrap().max_abs() < 1e-12);
        let (r, c) = (l.index(&[0, 1]), l.index(&[1, 0]));
        assert!((h.element(r, c).norm() - 0.7).abs() < 1e-15);
        assert_eq!(rwa_hamiltonian(0.0, 0.0, &l).unwrap().at(1.0).max_abs(), 0.0);
        let detuned = rwa_hamiltonian(0.7, 2.0, &l).unwrap();
        hermitian_everywhere(&detuned);
        let s = QState::basis(&l, &[1, 0]).unwrap();
        assert!(s.expectation(&detuned.at(0.3)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn ms_properties() {
        let l = ModeLayout::spin_lc_motion(3, 4).unwrap();
        let p = ModelParams::scaled_hierarchy();
        let zero = ModelParams { omega0: 0.0, eta: 0.0, ..p };
        assert_eq!(ms_hamiltonian(&zero, 1.0, &l).unwrap().at(0.2).max_abs(), 0.0);
        let delta = TWO_PI * 5.0;
        let h = ms_hamiltonian(&p, delta, &l).unwrap();
        let m = ms_generator(&p, &l).unwrap();
        for k in 0..10 {
            let t = 0.071 * k as f64;
            assert!(m.commutator(&h.at(t)).unwrap().max_abs() < 1e-12);
        }
        hermitian_everywhere(&h);
        let b = mode_ops(&l, MOTION).unwrap();
        let x = (&b + &b.dagger()).scale_re(FRAC_1_SQRT_2);
        let expected = m.compose(&x).unwrap().scale_re(std::f64::consts::SQRT_2);
        assert!(h.at(0.0).max_abs_diff(&expected) < 1e-12);
        assert!(!h.warnings().is_empty());
        let quiet = ms_hamiltonian(&ModelParams { omega0: 0.1, ..p }, 2.0, &l).unwrap();
        assert!(quiet.warnings().is_empty());
    }

    #[test]
    fn missing_slot() {
        let l = ModeLayout::single("lc", 3).unwrap();
        assert!(matches!(lab_frame_hamiltonian(&ModelParams::scaled_hierarchy(), &l), Err(Error::LabelNotFound(_))));
    }
}

// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Classical solutions of the modulated LC oscillator
//! `q̈ = −ω² (1 − η sin νt) q` to first order in `η`, and the charge operator
//! built from them.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::builders::LC;
use super::model::ModelParams;
use crate::error::{ensure_positive, Result};
use crate::qalgebra::{annihilation, embed, ModeLayout, QOperator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ClassicalForm {
    /// Particular solution of the first-order equation; residual `O(η²)`.
    #[default]
    Consistent,
    /// `e^{±iωt} − (η/6)(e^{±2iωt} + 3 e^{∓i(ν−ω)t})`.
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalSolution {
    pub eta: f64,
    pub omega: f64,
    pub nu: f64,
    pub form: ClassicalForm,
}

pub fn classical_solutions(eta: f64, omega: f64, nu: f64) -> Result<ClassicalSolution> {
    ClassicalSolution::new(eta, omega, nu, ClassicalForm::Consistent)
}

impl ClassicalSolution {
    pub fn new(eta: f64, omega: f64, nu: f64, form: ClassicalForm) -> Result<Self> {
        crate::device::effective_coupling(1.0, eta)?;
        ensure_positive("omega", omega)?;
        ensure_positive("nu", nu)?;
        Ok(Self { eta, omega, nu, form })
    }

    pub fn q_plus(&self, t: f64) -> C64 {
        let (w, nu, eta) = (self.omega, self.nu, self.eta);
        let base = C64::from_polar(1.0, w * t);
        match self.form {
            ClassicalForm::Consistent => {
                let half = C64::new(0.0, -0.5 * w * w);
                let c1 = half / (w * w - (w + nu).powi(2));
                let c2 = -half / (w * w - (w - nu).powi(2));
                base + eta * (c1 * C64::from_polar(1.0, (w + nu) * t) + c2 * C64::from_polar(1.0, (w - nu) * t))
            }
            ClassicalForm::Printed => {
                base - eta / 6.0 * (C64::from_polar(1.0, 2.0 * w * t) + 3.0 * C64::from_polar(1.0, -(nu - w) * t))
            }
        }
    }

    pub fn q_minus(&self, t: f64) -> C64 {
        self.q_plus(t).conj()
    }

    /// `max |q̈ + ω²(1 − η sin νt) q| / ω²` over `samples` points in
    /// `[0, duration]`, with `q̈` from central differences.
    pub fn max_ode_residual(&self, duration: f64, samples: usize) -> f64 {
        let h = 1e-3 / self.omega;
        let w2 = self.omega * self.omega;
        (0..samples)
            .map(|k| {
                let t = duration * k as f64 / (samples.max(2) - 1) as f64;
                let q = self.q_plus(t);
                let qdd = (self.q_plus(t + h) - 2.0 * q + self.q_plus(t - h)) / (h * h);
                (qdd + w2 * (1.0 - self.eta * (self.nu * t).sin()) * q).norm() / w2
            })
            .fold(0.0, f64::max)
    }

    /// `2π / |ω − ν|`.
    pub fn beat_period(&self) -> f64 {
        std::f64::consts::TAU / (self.omega - self.nu).abs()
    }
}

/// `Q(t) = (1 − ⅓η sin νt) q0 [A(t) + A†(t)]`,
/// `A(t) = e^{−iω_LC t}(1 − ⅔ iη sin νt) A`.
pub fn quasienergy_charge_operator(p: &ModelParams, q0: f64, t: f64, layout: &ModeLayout) -> Result<QOperator> {
    ensure_positive("q0", q0)?;
    let a = embed(&annihilation(layout.dim_of(LC)?)?, layout, LC)?;
    let s = (p.nu * t).sin();
    let at = a.scale(C64::from_polar(1.0, -p.omega_lc * t) * C64::new(1.0, -2.0 / 3.0 * p.eta * s));
    Ok((&at + &at.dagger()).scale_re(charge_envelope(p, t) * q0))
}

/// `1 − ⅓η sin νt`.
pub fn charge_envelope(p: &ModelParams, t: f64) -> f64 {
    1.0 - p.eta / 3.0 * (p.nu * t).sin()
}

/// Dimensionless charge quadrature `(a + a†)/√2` on the LC slot.
pub fn charge_quadrature(layout: &ModeLayout) -> Result<QOperator> {
    let a = embed(&annihilation(layout.dim_of(LC)?)?, layout, LC)?;
    Ok((&a + &a.dagger()).scale_re(FRAC_1_SQRT_2))
}

// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form device estimates. SI units, angular frequencies in rad/s.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::constants::{ELEMENTARY_CHARGE, EPSILON_0, HBAR};
use crate::error::{ensure_positive, Error, Result};

/// `1/√(LC)`.
pub fn lc_frequency(inductance: f64, capacitance: f64) -> Result<f64> {
    let l = ensure_positive("inductance", inductance)?;
    let c = ensure_positive("capacitance", capacitance)?;
    Ok(1.0 / (l * c).sqrt())
}

/// Characteristic impedance `√(L/C)`.
pub fn impedance(inductance: f64, capacitance: f64) -> Result<f64> {
    let l = ensure_positive("inductance", inductance)?;
    let c = ensure_positive("capacitance", capacitance)?;
    Ok((l / c).sqrt())
}

/// Motional zero-point length `√(ħ/(2mω))`.
pub fn zero_point_motion(mass: f64, omega: f64) -> Result<f64> {
    let m = ensure_positive("mass", mass)?;
    let w = ensure_positive("omega", omega)?;
    Ok((HBAR / (2.0 * m * w)).sqrt())
}

/// Zero-point charge fluctuation `√(ħ/(2Z))`.
pub fn zero_point_charge(impedance: f64) -> Result<f64> {
    let z = ensure_positive("impedance", impedance)?;
    Ok((HBAR / (2.0 * z)).sqrt())
}

/// Base ion–circuit coupling `g0 = e ζ z0 q0 / (ħ h C0)` in rad/s.
pub fn base_coupling(zeta: f64, z0: f64, q0: f64, ion_height: f64, c0: f64) -> Result<f64> {
    if !(zeta >= 0.0) {
        return Err(Error::InvalidParameter { name: "zeta", reason: format!("must be >= 0, got {zeta}") });
    }
    let z0 = ensure_positive("z0", z0)?;
    let q0 = ensure_positive("q0", q0)?;
    let h = ensure_positive("ion_height", ion_height)?;
    let c0 = ensure_positive("c0", c0)?;
    Ok(ELEMENTARY_CHARGE * zeta * z0 * q0 / (HBAR * h * c0))
}

/// Resonant parametric coupling `g = (2/3) η g0`.
pub fn effective_coupling(g0: f64, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    Ok(2.0 / 3.0 * eta * g0)
}

pub(crate) fn check_eta(eta: f64) -> Result<f64> {
    if (0.0..1.0).contains(&eta) {
        Ok(eta)
    } else {
        Err(Error::InvalidParameter { name: "eta", reason: format!("modulation depth must lie in [0, 1), got {eta}") })
    }
}

/// Capacitance of a coil of length `coil_length` and diameter `coil_diameter`
/// to a coaxial cylindrical shield: `2πε₀ℓ / ln(D/d)`.
pub fn shield_capacitance(coil_length: f64, shield_diameter: f64, coil_diameter: f64) -> Result<f64> {
    let l = ensure_positive("coil_length", coil_length)?;
    let d = ensure_positive("coil_diameter", coil_diameter)?;
    if !(shield_diameter > d) {
        return Err(Error::InvalidParameter {
            name: "shield_diameter",
            reason: format!("must exceed coil diameter ({shield_diameter} <= {d})"),
        });
    }
    Ok(2.0 * std::f64::consts::PI * EPSILON_0 * l / (shield_diameter / d).ln())
}

/// Motional heating rate rescaled with the `1/d⁴` ion–electrode distance law.
pub fn heating_rate_scaled(rate_ref: f64, distance_ref: f64, distance: f64) -> Result<f64> {
    let r = ensure_positive("rate_ref", rate_ref)?;
    let d_ref = ensure_positive("distance_ref", distance_ref)?;
    let d = ensure_positive("distance", distance)?;
    Ok(r * (d_ref / d).powi(4))
}

/// Static BAW displacement induced by the LC photon number, relative to the
/// static gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BawBackaction {
    pub ratio: C64,
    pub magnitude: f64,
}

/// `(x_B/ζ₀) · n_LC ω_LC / (ω_LC − ν + iκ_B/2)`.
pub fn baw_backaction(
    x_b: f64,
    gap: f64,
    n_lc: f64,
    omega_lc: f64,
    nu: f64,
    kappa_b: f64,
) -> Result<BawBackaction> {
    let x_b = ensure_positive("x_b", x_b)?;
    let gap = ensure_positive("gap", gap)?;
    if !(n_lc >= 0.0) {
        return Err(Error::InvalidParameter { name: "n_lc", reason: "photon number must be >= 0".into() });
    }
    let omega_lc = ensure_positive("omega_lc", omega_lc)?;
    let kappa_b = ensure_positive("kappa_b", kappa_b)?;
    let ratio = C64::new(x_b / gap * n_lc * omega_lc, 0.0) / C64::new(omega_lc - nu, kappa_b / 2.0);
    Ok(BawBackaction { ratio, magnitude: ratio.norm() })
}

/// Infidelity estimate `(κ_LC + γ_heat + γ_spin) · t`.
pub fn decoherence_budget(kappa_lc: f64, gamma_heat: f64, gamma_spin: f64, protocol_time: f64) -> Result<f64> {
    for (name, v) in [("kappa_lc", kappa_lc), ("gamma_heat", gamma_heat), ("gamma_spin", gamma_spin), ("protocol_time", protocol_time)] {
        if !(v >= 0.0) {
            return Err(Error::InvalidParameter { name, reason: format!("must be >= 0, got {v}") });
        }
    }
    Ok((kappa_lc + gamma_heat + gamma_spin) * protocol_time)
}

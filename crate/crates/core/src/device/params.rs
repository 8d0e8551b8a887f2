// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::constants::{BE9_ION_MASS, TWO_PI};
use super::formulas::{self, check_eta};
use crate::error::{ensure_positive, Error, Result};

const CONSISTENCY_TOL: f64 = 1e-12;

/// Independent device inputs. Everything in [`DeviceParams`] that is not
/// listed here is derived.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceInputs {
    pub inductance: f64,
    pub c0: f64,
    pub eta: f64,
    pub omega_i: f64,
    /// `Δ = ν − (ω_LC − ω_i)`.
    #[serde(default)]
    pub detuning: f64,
    pub ion_height: f64,
    pub zeta: f64,
    pub ion_mass: f64,
    /// Overrides `√(L/C)` when deriving `q0`.
    #[serde(default)]
    pub impedance: Option<f64>,
    pub kappa_lc: f64,
    pub gamma_heat: f64,
    pub omega0: f64,
}

impl DeviceInputs {
    /// Published operating point. The impedance is pinned to 2.7 kΩ rather
    /// than `√(L/C)` so that `q0` and `g0` reproduce the quoted values.
    pub fn operating_point() -> Self {
        Self {
            inductance: 440e-9,
            c0: 46e-15,
            eta: 0.3,
            omega_i: TWO_PI * 1e6,
            detuning: 0.0,
            ion_height: 25e-6,
            zeta: 0.25,
            ion_mass: BE9_ION_MASS,
            impedance: Some(2.7e3),
            kappa_lc: 2e3,
            gamma_heat: 500.0,
            omega0: TWO_PI * 100e3,
        }
    }

    pub fn derive(&self) -> Result<DeviceParams> {
        let omega_lc = formulas::lc_frequency(self.inductance, self.c0)?;
        let omega_i = ensure_positive("omega_i", self.omega_i)?;
        let eta = check_eta(self.eta)?;
        let nu = omega_lc - omega_i + self.detuning;
        let nu = ensure_positive("nu", nu)?;
        let impedance = match self.impedance {
            Some(z) => ensure_positive("impedance", z)?,
            None => formulas::impedance(self.inductance, self.c0)?,
        };
        let z0 = formulas::zero_point_motion(self.ion_mass, omega_i)?;
        let q0 = formulas::zero_point_charge(impedance)?;
        let g0 = formulas::base_coupling(self.zeta, z0, q0, self.ion_height, self.c0)?;
        let params = DeviceParams {
            inductance: self.inductance,
            c0: self.c0,
            eta,
            omega_lc,
            omega_i,
            nu,
            ion_height: self.ion_height,
            zeta: self.zeta,
            ion_mass: self.ion_mass,
            z0,
            q0,
            g0,
            impedance,
            kappa_lc: self.kappa_lc,
            gamma_heat: self.gamma_heat,
            omega0: self.omega0,
        };
        params.validate()?;
        Ok(params)
    }
}

impl Default for DeviceInputs {
    fn default() -> Self {
        Self::operating_point()
    }
}

/// Complete set of physical scalars for one device.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceParams {
    pub inductance: f64,
    pub c0: f64,
    pub eta: f64,
    pub omega_lc: f64,
    pub omega_i: f64,
    pub nu: f64,
    pub ion_height: f64,
    pub zeta: f64,
    pub ion_mass: f64,
    pub z0: f64,
    pub q0: f64,
    pub g0: f64,
    pub impedance: f64,
    pub kappa_lc: f64,
    pub gamma_heat: f64,
    pub omega0: f64,
}

impl DeviceParams {
    pub fn operating_point() -> Self {
        DeviceInputs::operating_point().derive().expect("reference operating point is valid")
    }

    pub fn detuning(&self) -> f64 {
        self.nu - (self.omega_lc - self.omega_i)
    }

    pub fn base_coupling(&self) -> Result<f64> {
        formulas::base_coupling(self.zeta, self.z0, self.q0, self.ion_height, self.c0)
    }

    pub fn effective_coupling(&self) -> f64 {
        2.0 / 3.0 * self.eta * self.g0
    }

    /// Positivity, `0 ≤ η < 1`, and consistency of the derived fields.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("inductance", self.inductance),
            ("c0", self.c0),
            ("omega_lc", self.omega_lc),
            ("omega_i", self.omega_i),
            ("nu", self.nu),
            ("ion_height", self.ion_height),
            ("zeta", self.zeta),
            ("ion_mass", self.ion_mass),
            ("z0", self.z0),
            ("q0", self.q0),
            ("g0", self.g0),
            ("impedance", self.impedance),
            ("omega0", self.omega0),
        ] {
            ensure_positive(name, v)?;
        }
        for (name, v) in [("kappa_lc", self.kappa_lc), ("gamma_heat", self.gamma_heat)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter { name, reason: format!("rate must be finite and >= 0, got {v}") });
            }
        }
        check_eta(self.eta)?;
        let checks = [
            ("omega_lc", self.omega_lc, formulas::lc_frequency(self.inductance, self.c0)?),
            ("z0", self.z0, formulas::zero_point_motion(self.ion_mass, self.omega_i)?),
            ("q0", self.q0, formulas::zero_point_charge(self.impedance)?),
            ("g0", self.g0, self.base_coupling()?),
        ];
        for (name, stored, expected) in checks {
            if ((stored - expected) / expected).abs() > CONSISTENCY_TOL {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("inconsistent derived value {stored} (expected {expected})"),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::device::constants::ELEMENTARY_CHARGE;

    #[test]
    fn paper_point() {
        let p = DeviceParams::operating_point();
        assert!((p.omega_lc - 7.029e9).abs() / 7.029e9 < 1e-3);
        assert!((p.z0 - 23.7e-9).abs() < 0.1e-9);
        assert!((p.q0 / ELEMENTARY_CHARGE - 0.872).abs() < 0.005);
        let g0_khz = p.g0 / TWO_PI / 1e3;
        assert!((160.0..=210.0).contains(&g0_khz), "{g0_khz}");
        assert!((p.effective_coupling() / p.g0 - 0.2).abs() < 1e-15);
        assert_eq!(p.detuning(), 0.0);
    }

    #[test]
    fn impedance_defaults_to_sqrt_l_over_c() {
        let inputs = DeviceInputs { impedance: None, ..DeviceInputs::operating_point() };
        let p = inputs.derive().unwrap();
        assert!((p.impedance - 3.0927e3).abs() < 1.0);
    }

    #[test]
    fn loss_rates_may_vanish_but_not_go_negative() {
        let lossless = DeviceInputs { kappa_lc: 0.0, gamma_heat: 0.0, ..DeviceInputs::operating_point() };
        assert!(lossless.derive().is_ok());
        let bad = DeviceInputs { gamma_heat: -1.0, ..DeviceInputs::operating_point() };
        assert!(bad.derive().is_err());
    }

    #[test]
    fn rejects_bad_eta_and_tampering() {
        let inputs = DeviceInputs { eta: 1.0, ..DeviceInputs::operating_point() };
        assert!(inputs.derive().is_err());
        let mut p = DeviceParams::operating_point();
        p.g0 *= 1.0 + 1e-9;
        assert!(p.validate().is_err());
        let mut p = DeviceParams::operating_point();
        p.kappa_lc = f64::NAN;
        assert!(matches!(p.validate(), Err(Error::InvalidParameter { name: "kappa_lc", .. })));
    }

    #[test]
    fn scaling_exponents() {
        let base = DeviceParams::operating_point();
        let lambda: f64 = 3.0;
        let far = DeviceInputs { ion_height: base.ion_height * lambda, ..DeviceInputs::operating_point() }.derive().unwrap();
        assert!((far.g0 * lambda / base.g0 - 1.0).abs() < 1e-14);
        let fast = DeviceInputs { omega_i: base.omega_i * lambda, ..DeviceInputs::operating_point() }.derive().unwrap();
        assert!((fast.z0 * lambda.sqrt() / base.z0 - 1.0).abs() < 1e-14);
        let h = formulas::heating_rate_scaled(1.0, 1.0, lambda).unwrap();
        assert!((h * lambda.powi(4) - 1.0).abs() < 1e-14);
    }
}

// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::device::constants::TWO_PI;
use crate::device::DeviceParams;
use crate::error::{ensure_positive, Error, Result};

/// Frequencies entering the Hamiltonians. Units are arbitrary but shared;
/// scaled runs use `2π × 1` as the frequency unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub omega_lc: f64,
    pub omega_i: f64,
    pub nu: f64,
    pub eta: f64,
    pub g0: f64,
    pub omega0: f64,
}

impl ModelParams {
    /// `ω_LC = 2π·1000`, `ω_i = 2π·10`, `g0 = 2π·2`, `η = 0.3`, `Δ = 0`,
    /// `Ω0 = 2π·0.5`.
    pub fn scaled_hierarchy() -> Self {
        Self::with_ratio(1e-2).expect("default hierarchy is valid")
    }

    /// Scaled hierarchy with `ω_i / ω_LC = ratio`, keeping `g0 / ω_i = 0.2`.
    pub fn with_ratio(ratio: f64) -> Result<Self> {
        let ratio = ensure_positive("ratio", ratio)?;
        if ratio >= 1.0 {
            return Err(Error::InvalidParameter { name: "ratio", reason: "motional frequency must lie below the LC frequency".into() });
        }
        let omega_i = TWO_PI * 10.0;
        let omega_lc = omega_i / ratio;
        Self::new(omega_lc, omega_i, omega_lc - omega_i, 0.3, TWO_PI * 2.0, TWO_PI * 0.5)
    }

    pub fn new(omega_lc: f64, omega_i: f64, nu: f64, eta: f64, g0: f64, omega0: f64) -> Result<Self> {
        let p = Self { omega_lc, omega_i, nu, eta, g0, omega0 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("omega_lc", self.omega_lc)?;
        ensure_positive("omega_i", self.omega_i)?;
        ensure_positive("nu", self.nu)?;
        for (name, v) in [("g0", self.g0), ("omega0", self.omega0)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter { name, reason: format!("must be finite and >= 0, got {v}") });
            }
        }
        crate::device::effective_coupling(1.0, self.eta).map(|_| ())
    }

    pub fn with_eta(self, eta: f64) -> Result<Self> {
        let p = Self { eta, ..self };
        p.validate()?;
        Ok(p)
    }

    pub fn with_detuning(self, delta: f64) -> Result<Self> {
        let p = Self { nu: self.omega_lc - self.omega_i + delta, ..self };
        p.validate()?;
        Ok(p)
    }

    /// `Δ = ν − (ω_LC − ω_i)`.
    pub fn detuning(&self) -> f64 {
        self.nu - (self.omega_lc - self.omega_i)
    }

    /// `g = (2/3) η g0`.
    pub fn effective_coupling(&self) -> f64 {
        2.0 / 3.0 * self.eta * self.g0
    }

    /// Duration of a full excitation transfer, `π / (2g)`.
    pub fn swap_time(&self) -> f64 {
        std::f64::consts::PI / (2.0 * self.effective_coupling())
    }
}

impl From<&DeviceParams> for ModelParams {
    fn from(d: &DeviceParams) -> Self {
        Self { omega_lc: d.omega_lc, omega_i: d.omega_i, nu: d.nu, eta: d.eta, g0: d.g0, omega0: d.omega0 }
    }
}

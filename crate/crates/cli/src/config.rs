// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration. Frequencies are written in Hz (`*_hz` keys) and turned
//! into angular frequencies when the physics inputs are built; everything
//! else is SI. Unknown keys are errors.

use std::f64::consts::TAU;
use std::path::Path;

use ionlc_core::device::{DeviceInputs, ElectrodeGeometry, MIN_RESOLUTION};
use ionlc_core::device::constants::BE9_ION_MASS;
use ionlc_core::hamiltonians::ModelParams;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const MIN_TOLERANCE: f64 = 1e-12;
pub const MAX_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Params,
    Simulate,
    Protocol,
    Sweep,
    Check,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Params => "params",
            Mode::Simulate => "simulate",
            Mode::Protocol => "protocol",
            Mode::Sweep => "sweep",
            Mode::Check => "check",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Must match the subcommand when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    /// Reserved; every run is deterministic.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub device: DeviceSection,
    #[serde(default)]
    pub model: ModelSection,
    #[serde(default)]
    pub truncation: TruncationSection,
    #[serde(default)]
    pub integrator: IntegratorSection,
    #[serde(default)]
    pub simulate: SimulateSection,
    #[serde(default)]
    pub protocol: ProtocolSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub output: OutputSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: None,
            seed: 0,
            device: DeviceSection::default(),
            model: ModelSection::default(),
            truncation: TruncationSection::default(),
            integrator: IntegratorSection::default(),
            simulate: SimulateSection::default(),
            protocol: ProtocolSection::default(),
            sweep: None,
            output: OutputSection::default(),
        }
    }
}

/// SI device description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeviceSection {
    pub inductance_h: f64,
    pub c0_f: f64,
    pub eta: f64,
    pub omega_i_hz: f64,
    /// `Δ/2π` with `Δ = ν − (ω_LC − ω_i)`.
    pub detuning_hz: f64,
    pub ion_height_m: f64,
    pub zeta: f64,
    pub ion_mass_kg: f64,
    pub impedance_ohm: f64,
    /// Use `√(L/C)` and ignore `impedance_ohm`.
    pub impedance_from_lc: bool,
    pub kappa_lc_per_s: f64,
    pub gamma_heat_per_s: f64,
    pub omega0_hz: f64,
    pub island_side_m: f64,
    pub gap_m: f64,
    pub heating_reference_per_s: f64,
    pub heating_reference_distance_m: f64,
}

impl Default for DeviceSection {
    fn default() -> Self {
        let p = DeviceInputs::operating_point();
        let g = ElectrodeGeometry::operating_point();
        Self {
            inductance_h: p.inductance,
            c0_f: p.c0,
            eta: p.eta,
            omega_i_hz: p.omega_i / TAU,
            detuning_hz: 0.0,
            ion_height_m: p.ion_height,
            zeta: p.zeta,
            ion_mass_kg: BE9_ION_MASS,
            impedance_ohm: p.impedance.unwrap_or(2.7e3),
            impedance_from_lc: false,
            kappa_lc_per_s: p.kappa_lc,
            gamma_heat_per_s: p.gamma_heat,
            omega0_hz: p.omega0 / TAU,
            island_side_m: g.island_side,
            gap_m: g.gap,
            heating_reference_per_s: 0.5,
            heating_reference_distance_m: 150e-6,
        }
    }
}

impl DeviceSection {
    pub fn inputs(&self) -> DeviceInputs {
        DeviceInputs {
            inductance: self.inductance_h,
            c0: self.c0_f,
            eta: self.eta,
            omega_i: TAU * self.omega_i_hz,
            detuning: TAU * self.detuning_hz,
            ion_height: self.ion_height_m,
            zeta: self.zeta,
            ion_mass: self.ion_mass_kg,
            impedance: if self.impedance_from_lc { None } else { Some(self.impedance_ohm) },
            kappa_lc: self.kappa_lc_per_s,
            gamma_heat: self.gamma_heat_per_s,
            omega0: TAU * self.omega0_hz,
        }
    }

    pub fn geometry(&self) -> Result<ElectrodeGeometry> {
        Ok(ElectrodeGeometry::new(self.island_side_m, self.gap_m, self.ion_height_m, MIN_RESOLUTION)?)
    }
}

/// Dimensionless dynamics parameters; `*_hz` is cycles per unit time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelSection {
    pub omega_lc_hz: f64,
    pub omega_i_hz: f64,
    /// `ν = ω_LC − ω_i + Δ`.
    pub detuning_hz: f64,
    pub eta: f64,
    pub g0_hz: f64,
    pub omega0_hz: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self { omega_lc_hz: 1000.0, omega_i_hz: 10.0, detuning_hz: 0.0, eta: 0.3, g0_hz: 2.0, omega0_hz: 0.5 }
    }
}

impl ModelSection {
    pub fn params(&self) -> Result<ModelParams> {
        let nu = TAU * (self.omega_lc_hz - self.omega_i_hz + self.detuning_hz);
        Ok(ModelParams::new(
            TAU * self.omega_lc_hz,
            TAU * self.omega_i_hz,
            nu,
            self.eta,
            TAU * self.g0_hz,
            TAU * self.omega0_hz,
        )?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TruncationSection {
    pub lc: usize,
    pub motion: usize,
}

impl Default for TruncationSection {
    fn default() -> Self {
        Self { lc: 3, motion: 3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegratorSection {
    pub tolerance: f64,
}

impl Default for IntegratorSection {
    fn default() -> Self {
        Self { tolerance: 1e-10 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimFrame {
    Rwa,
    Interaction,
    Lab,
}

/// Free evolution of a two-mode Fock state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulateSection {
    pub frame: SimFrame,
    /// Fock numbers `[lc, motion]`.
    pub initial: [usize; 2],
    /// Duration in units of the swap time `π/(2g)`.
    pub duration_swaps: f64,
    pub samples: usize,
}

impl Default for SimulateSection {
    fn default() -> Self {
        Self { frame: SimFrame::Rwa, initial: [1, 0], duration_swaps: 1.0, samples: 101 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtocolName {
    Swap,
    JcCnot,
    Ms,
    PhaseGate,
    Metrology,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProtocolSection {
    pub name: ProtocolName,
    /// Swap series sample count.
    pub samples: usize,
    /// MS detuning `δ/2π` in model units.
    pub delta_hz: f64,
    pub loops: u32,
    /// Two-ion gate displacement `|α|`.
    pub alpha: f64,
    /// Even-cat amplitude.
    pub cat_alpha: f64,
    pub probe: f64,
    pub mean_photons: f64,
}

impl Default for ProtocolSection {
    fn default() -> Self {
        Self {
            name: ProtocolName::Swap,
            samples: 101,
            delta_hz: 5.0,
            loops: 1,
            alpha: (std::f64::consts::PI / 8.0).sqrt(),
            cat_alpha: 2.0,
            probe: 0.2,
            mean_photons: 100.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// MS detuning in model units; `α` held near `target_alpha`.
    DeltaHz,
    /// Budget run over the LC decay rate.
    KappaLcPerS,
    /// Budget run over the heating rate.
    GammaHeatPerS,
}

impl SweepParameter {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParameter::DeltaHz => "delta_hz",
            SweepParameter::KappaLcPerS => "kappa_lc_per_s",
            SweepParameter::GammaHeatPerS => "gamma_heat_per_s",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    #[serde(default = "default_workers")]
    pub workers: usize,
    /// Motional heating rate in model units for `delta_hz` sweeps.
    #[serde(default = "default_heating_rate")]
    pub heating_rate: f64,
    #[serde(default = "default_target_alpha")]
    pub target_alpha: f64,
}

fn default_workers() -> usize {
    1
}

fn default_heating_rate() -> f64 {
    0.01
}

fn default_target_alpha() -> f64 {
    0.05
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: String,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: "out".into() }
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("`{name}` must be finite, got {v}")))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("`{name}` must be positive, got {v}")))
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig { path: path.into(), source })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let d = &self.device;
        for (name, v) in [
            ("device.inductance_h", d.inductance_h),
            ("device.c0_f", d.c0_f),
            ("device.omega_i_hz", d.omega_i_hz),
            ("device.ion_height_m", d.ion_height_m),
            ("device.ion_mass_kg", d.ion_mass_kg),
            ("device.impedance_ohm", d.impedance_ohm),
            ("device.omega0_hz", d.omega0_hz),
            ("device.island_side_m", d.island_side_m),
            ("device.gap_m", d.gap_m),
            ("device.heating_reference_per_s", d.heating_reference_per_s),
            ("device.heating_reference_distance_m", d.heating_reference_distance_m),
        ] {
            positive(name, v)?;
        }
        for (name, v) in [
            ("device.eta", d.eta),
            ("device.detuning_hz", d.detuning_hz),
            ("device.zeta", d.zeta),
            ("device.kappa_lc_per_s", d.kappa_lc_per_s),
            ("device.gamma_heat_per_s", d.gamma_heat_per_s),
        ] {
            finite(name, v)?;
        }
        let m = &self.model;
        for (name, v) in
            [("model.omega_lc_hz", m.omega_lc_hz), ("model.omega_i_hz", m.omega_i_hz), ("model.g0_hz", m.g0_hz), ("model.omega0_hz", m.omega0_hz)]
        {
            positive(name, v)?;
        }
        finite("model.eta", m.eta)?;
        finite("model.detuning_hz", m.detuning_hz)?;
        for (name, v) in [("truncation.lc", self.truncation.lc), ("truncation.motion", self.truncation.motion)] {
            if v < 2 {
                return Err(CliError::Validation(format!("`{name}` must be at least 2, got {v}")));
            }
        }
        let tol = self.integrator.tolerance;
        if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&tol) {
            return Err(CliError::Validation(format!(
                "`integrator.tolerance` must lie in [{MIN_TOLERANCE:e}, {MAX_TOLERANCE:e}], got {tol}"
            )));
        }
        let s = &self.simulate;
        positive("simulate.duration_swaps", s.duration_swaps)?;
        if s.samples < 2 {
            return Err(CliError::Validation("`simulate.samples` must be at least 2".into()));
        }
        if s.initial[0] >= self.truncation.lc || s.initial[1] >= self.truncation.motion {
            return Err(CliError::Validation(format!(
                "`simulate.initial` {:?} lies outside the truncation [{}, {}]",
                s.initial, self.truncation.lc, self.truncation.motion
            )));
        }
        let p = &self.protocol;
        if p.samples < 2 {
            return Err(CliError::Validation("`protocol.samples` must be at least 2".into()));
        }
        if p.loops == 0 {
            return Err(CliError::Validation("`protocol.loops` must be at least 1".into()));
        }
        for (name, v) in [("protocol.delta_hz", p.delta_hz), ("protocol.alpha", p.alpha), ("protocol.cat_alpha", p.cat_alpha), ("protocol.probe", p.probe), ("protocol.mean_photons", p.mean_photons)] {
            positive(name, v)?;
        }
        if let Some(sw) = &self.sweep {
            if sw.values.is_empty() {
                return Err(CliError::Validation("`sweep.values` is empty".into()));
            }
            for (k, &v) in sw.values.iter().enumerate() {
                finite(&format!("sweep.values[{k}]"), v)?;
                let ok = match sw.parameter {
                    SweepParameter::DeltaHz => v > 0.0,
                    SweepParameter::KappaLcPerS | SweepParameter::GammaHeatPerS => v >= 0.0,
                };
                if !ok {
                    return Err(CliError::Validation(format!("`sweep.values[{k}]` = {v} is out of range for {}", sw.parameter.as_str())));
                }
            }
            if sw.workers == 0 {
                return Err(CliError::Validation("`sweep.workers` must be at least 1".into()));
            }
            finite("sweep.heating_rate", sw.heating_rate)?;
            if sw.heating_rate < 0.0 {
                return Err(CliError::Validation("`sweep.heating_rate` must be >= 0".into()));
            }
            positive("sweep.target_alpha", sw.target_alpha)?;
        }
        if self.output.dir.is_empty() {
            return Err(CliError::Validation("`output.dir` is empty".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        assert_eq!(RunConfig::from_toml_str("").unwrap(), RunConfig::default());
    }

    #[test]
    fn unknown_key_is_named() {
        let err = RunConfig::from_toml_str("[device]\nomega_i_khz = 1.0\n").unwrap_err();
        assert!(err.to_string().contains("omega_i_khz"), "{err}");
    }

    #[test]
    fn hz_keys_become_angular() {
        let cfg = RunConfig::from_toml_str("[model]\nomega_i_hz = 20.0\n").unwrap();
        assert!((cfg.model.params().unwrap().omega_i - TAU * 20.0).abs() < 1e-12);
        assert!((cfg.device.inputs().omega_i - TAU * 1e6).abs() < 1e-6);
    }

    #[test]
    fn default_round_trips() {
        let cfg = RunConfig::default();
        assert_eq!(RunConfig::from_toml_str(&cfg.to_toml_string()).unwrap(), cfg);
    }
}

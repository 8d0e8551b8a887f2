// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Device parameters, engineering estimates and the electrode electrostatics.

pub mod constants;
mod electrostatics;
mod formulas;
mod params;

pub use electrostatics::{
    geometric_factor, geometric_factor_with, solve_laplace, ElectrodeGeometry, GeometricFactor, LaplaceSolution,
    SolverOptions, MIN_RESOLUTION,
};
pub use formulas::{
    base_coupling, baw_backaction, decoherence_budget, effective_coupling, heating_rate_scaled, impedance,
    lc_frequency, shield_capacitance, zero_point_charge, zero_point_motion, BawBackaction,
};
pub use params::{DeviceInputs, DeviceParams};

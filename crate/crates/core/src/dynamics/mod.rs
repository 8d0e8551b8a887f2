// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed and open-system time evolution, the slice-product propagator
//! oracle, fidelities and sinusoid fitting.

mod dissipators;
mod evolve;
mod fidelity;
mod fit;
pub mod integrator;
mod propagator;

pub use dissipators::{decay_collapse_op, heating_collapse_ops, HeatingModel};
pub use evolve::{
    evolve_lindblad, evolve_propagator, evolve_pure, CollapseOp, EvolutionSpec, ObservableSeries, SimulationResult,
    DEFAULT_TOLERANCE, MAX_TOLERANCE, MIN_TOLERANCE,
};
pub use fidelity::{concurrence, fidelity, unitary_fidelity};
pub use fit::{extract_rabi_frequency, RabiFit, MIN_PERIODS, RESIDUAL_THRESHOLD};
pub use integrator::{StepOptions, StepStats};
pub use propagator::{propagator, propagator_converged, SLICE_TOLERANCE};

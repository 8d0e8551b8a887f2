// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Time-dependent Hamiltonians of the coupled LC–ion system and the classical
//! modulated-oscillator solutions.

mod builders;
mod classical;
mod model;
mod td;

pub use builders::{
    frame_transformation, interaction_frame_hamiltonian, kappa, lab_frame_hamiltonian, lc_phase, ms_generator,
    ms_hamiltonian, resonant_coupling, rwa_hamiltonian, rwa_hamiltonian_complex, KappaForm, LC, MOTION, REGIME_RATIO,
    SPIN,
};
pub use classical::{
    charge_envelope, charge_quadrature, classical_solutions, quasienergy_charge_operator, ClassicalForm,
    ClassicalSolution,
};
pub use model::ModelParams;
pub use td::{Envelope, Frame, RegimeWarning, Term, TimeDependentHamiltonian};

// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Simulation of a parametric coupling between the motion of a trapped ion
//! and a superconducting LC resonator.
//!
//! The crate is organised bottom-up:
//!
//! * [`qalgebra`]: truncated Fock spaces, spins, operators and states.
//! * [`device`]: physical parameters, coupling estimates and the island
//!   electrostatics solver.
//! * [`hamiltonians`]: lab-frame, interaction-frame, resonant (RWA) and
//!   bichromatic Hamiltonians, plus the classical modulated-LC solutions.
//! * [`dynamics`]: adaptive Schrödinger / Lindblad integration, slice
//!   propagators, fidelities and sinusoid fitting.
//! * [`protocols`]: swap, swap-conjugated gates, Jaynes–Cummings CNOT,
//!   spin-dependent displacements, the echoed bichromatic sequence, the
//!   two-ion phase gate, cat-state metrology and the decoherence budget.

pub mod device;
pub mod dynamics;
pub mod error;
pub mod hamiltonians;
pub mod protocols;
pub mod qalgebra;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use qalgebra::{ModeLayout, QOperator, QState};

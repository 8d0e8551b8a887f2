// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Gate sequences built on the LC/motion exchange.

pub mod budget;
pub mod gates;
pub mod metrology;
pub mod ms;
pub mod result;
pub mod runs;
pub mod schedule;
pub mod swap;

pub use budget::{full_budget_run, BudgetOptions, BudgetRates};
pub use gates::{lc_spin_concurrence, spin_dependent_displacement, two_ion_layout, two_ion_phase_gate, PhaseGate, SPIN1, SPIN2};
pub use metrology::{cat_metrology, voltage_extrapolation, CatMetrology, VoltageExtrapolation};
pub use ms::{
    heating_point, heating_resistance_scan, ideal_gate, log_log_slope, loop_time, loops_for_alpha, ms_alpha, ms_schedule, ms_schedule_with_pulse,
    ms_sequence, z_pulse, HeatingPoint, HeatingScanOptions, MsOutcome, FIT_LEVELS, PURITY_THRESHOLD,
};
pub use result::{ProtocolResult, TruncationConvergence};
pub use schedule::{PulseSchedule, ScheduleRun, Segment, GATE_UNITARITY_TOL};
pub use swap::{
    conjugate_by_swaps, jc_cnot_schedule, jc_duration, jc_hamiltonian, jc_schedule, swap_duration, swap_schedule, swap_unitary,
};

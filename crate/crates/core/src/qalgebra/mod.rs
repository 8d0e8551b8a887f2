// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Operators and states on truncated tensor-product Hilbert spaces.

pub mod layout;
pub mod linalg;
pub mod operator;
pub mod sparse;
pub mod state;

pub use layout::ModeLayout;
pub use operator::{
    annihilation, creation, displacement, embed, embed_sub, kron, number, parity, pauli, quadratures, relabel,
    sigma_minus, sigma_plus, Axis, Flagged, QOperator, TruncationWarning,
};
pub use state::{cat_state, coherent_state, fock_state, spin_down, spin_state, spin_up, spin_x, QState, StateDiagnostics};


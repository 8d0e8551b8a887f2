// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Shared fixtures for the benchmarks.

use ionlc_core::hamiltonians::{rwa_hamiltonian, ModelParams, TimeDependentHamiltonian};
use ionlc_core::qalgebra::{annihilation, embed, ModeLayout, QOperator};
use ionlc_core::Result;

/// `i·(a†b + a b†)·t` on an `n × n` two-mode space: a dense anti-Hermitian
/// generator with norm growing with `n`.
pub fn beam_splitter_generator(n: usize, t: f64) -> Result<QOperator> {
    let layout = ModeLayout::lc_motion(n, n)?;
    let a = embed(&annihilation(n)?, &layout, "lc")?;
    let b = embed(&annihilation(n)?, &layout, "motion")?;
    let h = &a.dagger().compose(&b)? + &a.compose(&b.dagger())?;
    Ok(h.scale(ionlc_core::C64::new(0.0, -t)))
}

/// Resonant exchange at the scaled hierarchy with its swap time.
pub fn swap_fixture(n: usize) -> Result<(TimeDependentHamiltonian, f64)> {
    let p = ModelParams::scaled_hierarchy();
    let layout = ModeLayout::lc_motion(n, n)?;
    Ok((rwa_hamiltonian(p.effective_coupling(), 0.0, &layout)?, p.swap_time()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(beam_splitter_generator(4, 1.0).unwrap().dim(), 16);
        let (h, t) = swap_fixture(3).unwrap();
        assert!(t > 0.0 && h.hermiticity_residual(0.0) < 1e-12);
    }
}

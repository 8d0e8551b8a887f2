// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force propagator: an ordered product of slice exponentials from the
//! fourth-order commutator-free Magnus scheme at the two Gauss points.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hamiltonians::TimeDependentHamiltonian;
use crate::qalgebra::linalg;
use crate::qalgebra::QOperator;

/// Largest entrywise change tolerated when the slice count is doubled.
pub const SLICE_TOLERANCE: f64 = 1e-8;

fn product(h: &TimeDependentHamiltonian, t_final: f64, n_slices: usize) -> Array2<C64> {
    let sqrt3 = 3f64.sqrt();
    let (c1, c2) = (0.5 - sqrt3 / 6.0, 0.5 + sqrt3 / 6.0);
    let (a1, a2) = ((3.0 - 2.0 * sqrt3) / 12.0, (3.0 + 2.0 * sqrt3) / 12.0);
    let dt = t_final / n_slices as f64;
    let n = h.layout().total_dim();
    let mut u = linalg::identity(n);
    let minus_i_dt = C64::new(0.0, -dt);
    for k in 0..n_slices {
        let t = k as f64 * dt;
        let h1 = h.at(t + c1 * dt).into_matrix();
        let h2 = h.at(t + c2 * dt).into_matrix();
        let first = linalg::expm(&(&h1 * C64::new(a2, 0.0) + &h2 * C64::new(a1, 0.0)).mapv(|v| v * minus_i_dt));
        let second = linalg::expm(&(&h1 * C64::new(a1, 0.0) + &h2 * C64::new(a2, 0.0)).mapv(|v| v * minus_i_dt));
        u = second.dot(&first.dot(&u));
    }
    u
}

/// `U(t_final)` from `n_slices` slices, checked against `2 n_slices`.
/// Returns the finer product.
pub fn propagator(h: &TimeDependentHamiltonian, t_final: f64, n_slices: usize) -> Result<QOperator> {
    if n_slices == 0 {
        return Err(Error::InvalidParameter { name: "n_slices", reason: "must be >= 1".into() });
    }
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(Error::InvalidParameter { name: "t_final", reason: format!("must be finite and >= 0, got {t_final}") });
    }
    let coarse = product(h, t_final, n_slices);
    let fine = product(h, t_final, 2 * n_slices);
    let change = linalg::max_abs_diff(&coarse, &fine);
    if change >= SLICE_TOLERANCE {
        return Err(Error::NonConvergence {
            what: "slice propagator",
            detail: format!("doubling {n_slices} slices changed the result by {change:e}"),
        });
    }
    QOperator::new(h.layout().clone(), fine)
}

/// Doubles the slice count from `start` until [`propagator`] converges or
/// `max_slices` is exceeded.
pub fn propagator_converged(h: &TimeDependentHamiltonian, t_final: f64, start: usize, max_slices: usize) -> Result<QOperator> {
    let mut n = start.max(1);
    let mut coarse = product(h, t_final, n);
    loop {
        let fine = product(h, t_final, 2 * n);
        let change = linalg::max_abs_diff(&coarse, &fine);
        if change < SLICE_TOLERANCE {
            return QOperator::new(h.layout().clone(), fine);
        }
        n *= 2;
        if n > max_slices {
            return Err(Error::NonConvergence {
                what: "slice propagator",
                detail: format!("change {change:e} at {n} slices"),
            });
        }
        coarse = fine;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve_propagator, evolve_pure, fidelity, EvolutionSpec};
    use crate::hamiltonians::{rwa_hamiltonian, Frame};
    use crate::qalgebra::{ModeLayout, QState};
    use ndarray::Array1;
    use std::sync::Arc;

    fn driven(l: &ModeLayout, seed: u64) -> TimeDependentHamiltonian {
        let n = l.total_dim();
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut m0 = Array2::<C64>::zeros((n, n));
        let mut m1 = Array2::<C64>::zeros((n, n));
        for r in 0..n {
            for c in 0..n {
                m0[[r, c]] = C64::new(next(), next());
                m1[[r, c]] = C64::new(next(), next());
            }
        }
        let h0 = &m0 + &linalg::dagger(&m0);
        let mut h = TimeDependentHamiltonian::new(l.clone(), Frame::Lab);
        h.add_static(QOperator::new(l.clone(), h0).unwrap()).unwrap();
        h.add_hermitian_pair(QOperator::new(l.clone(), m1).unwrap(), Arc::new(|t: f64| C64::from_polar(1.0, 2.3 * t))).unwrap();
        h
    }

    #[test]
    fn zero_and_static() {
        let l = ModeLayout::lc_motion(3, 2).unwrap();
        let zero = TimeDependentHamiltonian::new(l.clone(), Frame::Lab);
        let u = propagator(&zero, 3.0, 4).unwrap();
        assert!(linalg::max_abs_diff(u.matrix(), &linalg::identity(6)) < 1e-15);
        let h = rwa_hamiltonian(0.8, 0.0, &l).unwrap();
        let u = propagator(&h, 1.3, 1).unwrap();
        assert!(u.max_abs_diff(&h.at(0.0).evolution(1.3)) < 1e-13);
    }

    #[test]
    fn agrees_with_integrator_on_random_systems() {
        let l = ModeLayout::lc_motion(2, 3).unwrap();
        for seed in 1..4 {
            let h = driven(&l, seed);
            let u = propagator_converged(&h, 1.5, 64, 1 << 16).unwrap();
            assert!(u.unitarity_residual() < 1e-8);
            let u_ode = evolve_propagator(&h, 1.5, 1e-11).unwrap();
            assert!(u.max_abs_diff(&u_ode) < 1e-7);
            let psi0 = QState::normalized(l.clone(), Array1::from_shape_fn(6, |k| C64::new(1.0 + k as f64, -0.5))).unwrap();
            let r = evolve_pure(&EvolutionSpec::new(h, 1.5).tolerance(1e-11), &psi0).unwrap();
            let oracle = psi0.apply(&u).unwrap();
            assert!(1.0 - fidelity(&oracle, &r.final_state).unwrap() < 1e-7);
        }
    }

    #[test]
    fn fourth_order_slices() {
        let l = ModeLayout::lc_motion(2, 2).unwrap();
        let h = driven(&l, 9);
        let exact = product(&h, 1.0, 4096);
        let e1 = linalg::max_abs_diff(&product(&h, 1.0, 16), &exact);
        let e2 = linalg::max_abs_diff(&product(&h, 1.0, 32), &exact);
        let ratio = e1 / e2;
        assert!(ratio > 12.0 && ratio < 20.0, "{ratio}");
    }

    #[test]
    fn unconverged_slices_error() {
        let l = ModeLayout::lc_motion(2, 3).unwrap();
        let h = driven(&l, 2);
        assert!(matches!(propagator(&h, 5.0, 2), Err(Error::NonConvergence { .. })));
    }
}

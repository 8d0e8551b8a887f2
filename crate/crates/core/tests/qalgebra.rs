// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use approx::assert_abs_diff_eq;
use ionlc_core::qalgebra::{
    annihilation, cat_state, coherent_state, displacement, embed, fock_state, kron, number, parity, pauli, relabel, spin_up, Axis,
    ModeLayout, QOperator, QState,
};
use ionlc_core::C64;
use ndarray::Array2;
use proptest::prelude::*;

fn hermitian(entries: &[(f64, f64)], n: usize) -> Array2<C64> {
    let m = Array2::from_shape_fn((n, n), |(i, j)| {
        let (re, im) = entries[i * n + j];
        C64::new(re, im)
    });
    Array2::from_shape_fn((n, n), |(i, j)| 0.5 * (m[[i, j]] + m[[j, i]].conj()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn commutator_is_identity_below_edge(n in 2usize..32) {
        let a = annihilation(n).unwrap();
        let c = a.commutator(&a.dagger()).unwrap();
        for i in 0..n - 1 {
            prop_assert!((c.element(i, i) - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
        prop_assert!((c.element(n - 1, n - 1) - C64::new(1.0 - n as f64, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn exponential_of_hermitian_is_unitary(
        entries in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 36),
        t in -5.0f64..5.0,
    ) {
        let layout = ModeLayout::single("lc", 6).unwrap();
        let h = QOperator::new(layout, hermitian(&entries, 6)).unwrap();
        let u = h.evolution(t);
        prop_assert!(u.unitarity_residual() < 1e-11);
        let back = u.compose(&h.evolution(-t)).unwrap();
        prop_assert!(back.max_abs_diff(&QOperator::identity(h.layout())) < 1e-11);
    }

    #[test]
    fn reduced_state_of_product_recovers_factors(re in -1.0f64..1.0, im in -1.0f64..1.0, n in 0usize..4) {
        let coh = coherent_state("lc", C64::new(re, im), 24).unwrap().value;
        let fock = fock_state("motion", 5, n).unwrap();
        let joint = QState::product(&[coh.clone(), fock]).unwrap();
        let back = joint.reduced(&["lc"]).unwrap();
        let rho = back.density_matrix();
        let want = coh.density_matrix();
        for (a, b) in rho.iter().zip(want.iter()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
        prop_assert!((back.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coherent_state_mean_matches_amplitude(re in -1.5f64..1.5, im in -1.5f64..1.5) {
        let alpha = C64::new(re, im);
        let psi = coherent_state("lc", alpha, 40).unwrap().value;
        let a = relabel(&annihilation(40).unwrap(), "lc").unwrap();
        let n = relabel(&number(40).unwrap(), "lc").unwrap();
        prop_assert!((psi.expectation(&a).unwrap() - alpha).norm() < 1e-9);
        prop_assert!((psi.expectation(&n).unwrap().re - alpha.norm_sqr()).abs() < 1e-8);
    }
}

#[test]
fn displacement_shifts_vacuum_to_coherent_state() {
    let alpha = C64::new(0.8, -0.4);
    let d = displacement(alpha, 30).unwrap().value;
    let vac = fock_state("lc", 30, 0).unwrap();
    let moved = vac.apply(&relabel(&d, "lc").unwrap()).unwrap();
    let want = coherent_state("lc", alpha, 30).unwrap().value;
    let overlap: C64 = moved.as_vector().unwrap().iter().zip(want.as_vector().unwrap().iter()).map(|(a, b)| a.conj() * b).sum();
    assert_abs_diff_eq!(overlap.norm(), 1.0, epsilon = 1e-10);
}

#[test]
fn cat_parity_follows_relative_phase() {
    let p = parity(30).unwrap();
    let p = relabel(&p, "lc").unwrap();
    let even = cat_state("lc", C64::new(1.2, 0.0), 0.0, 30).unwrap().value;
    let odd = cat_state("lc", C64::new(1.2, 0.0), std::f64::consts::PI, 30).unwrap().value;
    assert_abs_diff_eq!(even.expectation(&p).unwrap().re, 1.0, epsilon = 1e-10);
    assert_abs_diff_eq!(odd.expectation(&p).unwrap().re, -1.0, epsilon = 1e-10);
}

#[test]
fn layout_order_fixes_tensor_index() {
    let l = ModeLayout::spin_lc_motion(3, 4).unwrap();
    assert_eq!(l.total_dim(), 24);
    assert_eq!(l.index(&[1, 2, 3]), 12 + 2 * 4 + 3);
    assert_eq!(l.digits(23), vec![1, 2, 3]);
    let sz = embed(&pauli(Axis::Z), &l, "spin").unwrap();
    let up = QState::product(&[spin_up("spin"), fock_state("lc", 3, 0).unwrap(), fock_state("motion", 4, 0).unwrap()]).unwrap();
    assert_abs_diff_eq!(up.expectation(&sz).unwrap().re, 1.0, epsilon = 1e-15);
    assert_eq!(up.as_vector().unwrap()[0], C64::new(1.0, 0.0));
}

#[test]
fn kron_rejects_duplicate_labels() {
    assert!(kron(&pauli(Axis::X), &pauli(Axis::Z)).is_err());
}

#[test]
fn displacement_flags_truncation() {
    assert!(!displacement(C64::new(3.0, 0.0), 10).unwrap().warnings.is_empty());
    assert!(displacement(C64::new(0.3, 0.0), 40).unwrap().warnings.is_empty());
}

// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::qalgebra::linalg;
use crate::qalgebra::{QOperator, QState};

/// Uhlmann fidelity `(tr √(√ρ σ √ρ))²`; the squared overlap for pure states.
pub fn fidelity(a: &QState, b: &QState) -> Result<f64> {
    if a.layout() != b.layout() {
        return Err(Error::LayoutMismatch(format!("{:?} vs {:?}", a.layout().labels(), b.layout().labels())));
    }
    let f = match (a.as_vector(), b.as_vector()) {
        (Some(u), Some(v)) => u.iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum::<C64>().norm_sqr(),
        (Some(u), None) | (None, Some(u)) => {
            let rho = if a.is_pure() { b.density_matrix() } else { a.density_matrix() };
            let ru = rho.dot(u);
            u.iter().zip(ru.iter()).map(|(x, y)| x.conj() * y).sum::<C64>().re
        }
        (None, None) => {
            let rho = hermitian_part(&a.density_matrix());
            let sigma = hermitian_part(&b.density_matrix());
            let sqrt_rho = linalg::hermitian_map(&rho, |x| x.max(0.0).sqrt());
            let inner = hermitian_part(&sqrt_rho.dot(&sigma).dot(&sqrt_rho));
            let (ev, _) = linalg::eigh(&inner);
            ev.iter().map(|x| x.max(0.0).sqrt()).sum::<f64>().powi(2)
        }
    };
    Ok(f.clamp(0.0, 1.0))
}

fn hermitian_part(m: &Array2<C64>) -> Array2<C64> {
    (m + &linalg::dagger(m)).mapv(|v| v * 0.5)
}

/// `|tr(U†V)/d|²`.
pub fn unitary_fidelity(u: &QOperator, v: &QOperator) -> Result<f64> {
    if u.layout() != v.layout() {
        return Err(Error::LayoutMismatch("unitary layouts differ".into()));
    }
    let d = u.dim() as f64;
    Ok((linalg::frobenius_inner(u.matrix(), v.matrix()) / d).norm_sqr())
}

/// Wootters concurrence of a two-qubit density matrix in the basis
/// `|00⟩, |01⟩, |10⟩, |11⟩`.
pub fn concurrence(rho: &Array2<C64>) -> Result<f64> {
    if rho.dim() != (4, 4) {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.nrows() });
    }
    let rho = hermitian_part(rho);
    // σy ⊗ σy is real and anti-diagonal with signs (−1, 1, 1, −1).
    let sign = [-1.0, 1.0, 1.0, -1.0];
    let tilde = Array2::from_shape_fn((4, 4), |(i, j)| rho[[3 - i, 3 - j]].conj() * (sign[i] * sign[j]));
    let sqrt_rho = linalg::hermitian_map(&rho, |x| x.max(0.0).sqrt());
    let (ev, _) = linalg::eigh(&hermitian_part(&sqrt_rho.dot(&tilde).dot(&sqrt_rho)));
    let mut l: Vec<f64> = ev.iter().map(|x| x.max(0.0).sqrt()).collect();
    l.sort_by(|a, b| b.total_cmp(a));
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{coherent_state, fock_state, ModeLayout};

    #[test]
    fn basic_values() {
        let a = fock_state("lc", 6, 2).unwrap();
        let b = fock_state("lc", 6, 3).unwrap();
        assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity(&a, &b).unwrap(), 0.0);
        let alpha = C64::new(0.8, -0.4);
        let coh = coherent_state("lc", alpha, 40).unwrap().value;
        let vac = fock_state("lc", 40, 0).unwrap();
        assert!((fidelity(&vac, &coh).unwrap() - (-alpha.norm_sqr()).exp()).abs() < 1e-8);
    }

    #[test]
    fn mixed_forms_agree() {
        let coh = coherent_state("lc", C64::new(0.5, 0.3), 20).unwrap().value;
        let other = coherent_state("lc", C64::new(-0.2, 0.6), 20).unwrap().value;
        let pure = fidelity(&coh, &other).unwrap();
        let half = fidelity(&coh.to_mixed(), &other).unwrap();
        let full = fidelity(&coh.to_mixed(), &other.to_mixed()).unwrap();
        assert!((pure - half).abs() < 1e-12);
        assert!((pure - full).abs() < 1e-7);
        assert!((fidelity(&other.to_mixed(), &coh.to_mixed()).unwrap() - full).abs() < 1e-7);
    }

    #[test]
    fn concurrence_limits() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = ndarray::arr1(&[C64::new(h, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, h)]);
        let rho = Array2::from_shape_fn((4, 4), |(i, j)| bell[i] * bell[j].conj());
        assert!((concurrence(&rho).unwrap() - 1.0).abs() < 1e-7);
        let mut prod = Array2::zeros((4, 4));
        prod[[1, 1]] = C64::new(1.0, 0.0);
        assert!(concurrence(&prod).unwrap() < 1e-7);
        let mixed = Array2::from_diag(&ndarray::arr1(&[C64::new(0.25, 0.0); 4]));
        assert!(concurrence(&mixed).unwrap() < 1e-12);
    }

    #[test]
    fn layout_mismatch() {
        let a = fock_state("lc", 4, 0).unwrap();
        let b = fock_state("motion", 4, 0).unwrap();
        assert!(fidelity(&a, &b).is_err());
        let l = ModeLayout::single("lc", 4).unwrap();
        let id = QOperator::identity(&l);
        assert!((unitary_fidelity(&id, &id).unwrap() - 1.0).abs() < 1e-15);
    }
}

// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use std::ops::{Add, Mul, Sub};

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::layout::ModeLayout;
use super::linalg;
use crate::error::{Error, Result};

/// A complex square matrix acting on the space described by its layout.
#[derive(Debug, Clone, PartialEq)]
pub struct QOperator {
    layout: ModeLayout,
    matrix: Array2<C64>,
}

/// Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Raised (never as an error) when a coherent amplitude is large compared to
/// the Fock truncation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationWarning {
    pub mean_photons: f64,
    pub dim: usize,
    pub limit: f64,
}

impl TruncationWarning {
    /// Flags `|α|² > dim / 4`.
    pub fn check(alpha_sq: f64, dim: usize) -> Option<Self> {
        let limit = dim as f64 / 4.0;
        (alpha_sq > limit).then_some(Self { mean_photons: alpha_sq, dim, limit })
    }
}

/// A value with attached truncation warnings.
#[derive(Debug, Clone)]
pub struct Flagged<T> {
    pub value: T,
    pub warnings: Vec<TruncationWarning>,
}

impl<T> Flagged<T> {
    pub fn clean(value: T) -> Self {
        Self { value, warnings: Vec::new() }
    }

    pub fn into_inner(self) -> T {
        self.value
    }
}

impl QOperator {
    pub fn new(layout: ModeLayout, matrix: Array2<C64>) -> Result<Self> {
        let n = layout.total_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.nrows().max(matrix.ncols()) });
        }
        Ok(Self { layout, matrix })
    }

    pub(crate) fn from_parts(layout: ModeLayout, matrix: Array2<C64>) -> Self {
        debug_assert_eq!(layout.total_dim(), matrix.nrows());
        Self { layout, matrix }
    }

    pub fn identity(layout: &ModeLayout) -> Self {
        Self::from_parts(layout.clone(), linalg::identity(layout.total_dim()))
    }

    pub fn zeros(layout: &ModeLayout) -> Self {
        let n = layout.total_dim();
        Self::from_parts(layout.clone(), Array2::zeros((n, n)))
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Array2<C64> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn dagger(&self) -> Self {
        Self::from_parts(self.layout.clone(), linalg::dagger(&self.matrix))
    }

    /// `max |H − H†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        linalg::max_abs_diff(&self.matrix, &linalg::dagger(&self.matrix))
    }

    /// `max |U†U − I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = linalg::dagger(&self.matrix).dot(&self.matrix);
        linalg::max_abs_diff(&prod, &linalg::identity(self.dim()))
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::from_parts(self.layout.clone(), self.matrix.mapv(|z| z * factor))
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        self.require_same_layout(rhs)?;
        Ok(Self::from_parts(self.layout.clone(), self.matrix.dot(&rhs.matrix)))
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.require_same_layout(rhs)?;
        Ok(Self::from_parts(self.layout.clone(), linalg::commutator(&self.matrix, &rhs.matrix)))
    }

    pub fn trace(&self) -> C64 {
        linalg::trace(&self.matrix)
    }

    pub fn expm(&self) -> Self {
        Self::from_parts(self.layout.clone(), linalg::expm(&self.matrix))
    }

    /// `exp(-i H t)` for a Hamiltonian `H` (in angular-frequency units).
    pub fn evolution(&self, t: f64) -> Self {
        self.scale(C64::new(0.0, -t)).expm()
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.matrix)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        linalg::max_abs_diff(&self.matrix, &other.matrix)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues_hermitian(&self) -> Vec<f64> {
        linalg::eigh(&self.matrix).0.to_vec()
    }

    pub fn element(&self, row: usize, col: usize) -> C64 {
        self.matrix[[row, col]]
    }

    pub(crate) fn require_same_layout(&self, rhs: &Self) -> Result<()> {
        if self.layout != rhs.layout {
            return Err(Error::LayoutMismatch(format!("{:?} vs {:?}", self.layout.labels(), rhs.layout.labels())));
        }
        Ok(())
    }
}

impl Add for &QOperator {
    type Output = QOperator;

    fn add(self, rhs: &QOperator) -> QOperator {
        assert_eq!(self.layout, rhs.layout, "adding operators on different layouts");
        QOperator::from_parts(self.layout.clone(), &self.matrix + &rhs.matrix)
    }
}

impl Sub for &QOperator {
    type Output = QOperator;

    fn sub(self, rhs: &QOperator) -> QOperator {
        assert_eq!(self.layout, rhs.layout, "subtracting operators on different layouts");
        QOperator::from_parts(self.layout.clone(), &self.matrix - &rhs.matrix)
    }
}

impl Mul for &QOperator {
    type Output = QOperator;

    fn mul(self, rhs: &QOperator) -> QOperator {
        assert_eq!(self.layout, rhs.layout, "multiplying operators on different layouts");
        QOperator::from_parts(self.layout.clone(), self.matrix.dot(&rhs.matrix))
    }
}

fn mode_layout(dim: usize) -> Result<ModeLayout> {
    ModeLayout::single("mode", dim)
}

/// Bosonic annihilation operator truncated to `dim` Fock levels.
pub fn annihilation(dim: usize) -> Result<QOperator> {
    if dim < 2 {
        return Err(Error::InvalidDimension { dim, reason: "a bosonic mode needs at least 2 levels" });
    }
    let mut m = Array2::zeros((dim, dim));
    for n in 1..dim {
        m[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    Ok(QOperator::from_parts(mode_layout(dim)?, m))
}

pub fn creation(dim: usize) -> Result<QOperator> {
    Ok(annihilation(dim)?.dagger())
}

pub fn number(dim: usize) -> Result<QOperator> {
    if dim < 2 {
        return Err(Error::InvalidDimension { dim, reason: "a bosonic mode needs at least 2 levels" });
    }
    let diag = ndarray::Array1::from_iter((0..dim).map(|n| C64::new(n as f64, 0.0)));
    Ok(QOperator::from_parts(mode_layout(dim)?, Array2::from_diag(&diag)))
}

/// Photon-number parity `(-1)^n`.
pub fn parity(dim: usize) -> Result<QOperator> {
    let n = number(dim)?;
    let diag = n.matrix.diag().mapv(|z| if (z.re as usize) % 2 == 0 { C64::new(1.0, 0.0) } else { C64::new(-1.0, 0.0) });
    Ok(QOperator::from_parts(n.layout, Array2::from_diag(&diag)))
}

/// Pauli matrix. Basis order is (|↑⟩, |↓⟩), so `σz = diag(1, −1)`.
pub fn pauli(axis: Axis) -> QOperator {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let entries = match axis {
        Axis::X => [z, one, one, z],
        Axis::Y => [z, -i, i, z],
        Axis::Z => [one, z, z, -one],
    };
    QOperator::from_parts(
        ModeLayout::single("spin", 2).expect("static layout"),
        Array2::from_shape_vec((2, 2), entries.to_vec()).expect("2x2"),
    )
}

/// Spin raising operator `σ⁺ = |↑⟩⟨↓|`.
pub fn sigma_plus() -> QOperator {
    let mut m = Array2::zeros((2, 2));
    m[[0, 1]] = C64::new(1.0, 0.0);
    QOperator::from_parts(ModeLayout::single("spin", 2).expect("static layout"), m)
}

pub fn sigma_minus() -> QOperator {
    sigma_plus().dagger()
}

/// Lift a single-subsystem operator into `layout` at `slot`.
pub fn embed(op: &QOperator, layout: &ModeLayout, slot: &str) -> Result<QOperator> {
    if op.layout.len() != 1 {
        return Err(Error::LayoutMismatch("embed expects a single-subsystem operator".into()));
    }
    embed_at(op.matrix(), layout, &[layout.slot(slot)?])
}

/// Lift an operator defined on a sub-layout (labels must exist in `layout`)
/// into `layout`, acting as identity elsewhere.
pub fn embed_sub(op: &QOperator, layout: &ModeLayout) -> Result<QOperator> {
    let slots = op
        .layout
        .labels()
        .iter()
        .map(|l| layout.slot(l))
        .collect::<Result<Vec<_>>>()?;
    for w in slots.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::LayoutMismatch("sub-layout slots must follow the target order".into()));
        }
    }
    embed_at(op.matrix(), layout, &slots)
}

fn embed_at(op: &Array2<C64>, layout: &ModeLayout, slots: &[usize]) -> Result<QOperator> {
    let sub_dims: Vec<usize> = slots.iter().map(|&s| layout.dims()[s]).collect();
    let sub_total: usize = sub_dims.iter().product();
    if op.nrows() != sub_total {
        return Err(Error::DimensionMismatch { expected: sub_total, found: op.nrows() });
    }
    let n = layout.total_dim();
    let mut out = Array2::zeros((n, n));
    let sub_digits = |mut idx: usize| {
        let mut d = vec![0; sub_dims.len()];
        for k in (0..sub_dims.len()).rev() {
            d[k] = idx % sub_dims[k];
            idx /= sub_dims[k];
        }
        d
    };
    let sub_digit_table: Vec<Vec<usize>> = (0..sub_total).map(sub_digits).collect();
    for row in 0..n {
        let row_digits = layout.digits(row);
        let sub_row = slots.iter().fold(0, |acc, &s| acc * layout.dims()[s] + row_digits[s]);
        let mut col_digits = row_digits.clone();
        for (sub_col, dig) in sub_digit_table.iter().enumerate() {
            let v = op[[sub_row, sub_col]];
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            for (k, &s) in slots.iter().enumerate() {
                col_digits[s] = dig[k];
            }
            out[[row, layout.index(&col_digits)]] = v;
        }
    }
    Ok(QOperator::from_parts(layout.clone(), out))
}

/// Tensor product `a ⊗ b` with concatenated layouts.
pub fn kron(a: &QOperator, b: &QOperator) -> Result<QOperator> {
    let layout = ModeLayout::new(
        a.layout
            .labels()
            .iter()
            .zip(a.layout.dims())
            .chain(b.layout.labels().iter().zip(b.layout.dims()))
            .map(|(l, &d)| (l.clone(), d)),
    )?;
    let (na, nb) = (a.dim(), b.dim());
    let m = Array2::from_shape_fn((na * nb, na * nb), |(r, c)| a.matrix[[r / nb, c / nb]] * b.matrix[[r % nb, c % nb]]);
    Ok(QOperator::from_parts(layout, m))
}

/// Rename the single subsystem of a one-mode operator.
pub fn relabel(op: &QOperator, label: &str) -> Result<QOperator> {
    if op.layout.len() != 1 {
        return Err(Error::LayoutMismatch("relabel expects a single-subsystem operator".into()));
    }
    Ok(QOperator::from_parts(ModeLayout::single(label, op.dim())?, op.matrix.clone()))
}

/// Displacement operator `D(α) = exp(α a† − α* a)` on a truncated mode.
pub fn displacement(alpha: C64, dim: usize) -> Result<Flagged<QOperator>> {
    let a = annihilation(dim)?;
    let gen = &a.dagger().scale(alpha) - &a.scale(alpha.conj());
    let warnings = TruncationWarning::check(alpha.norm_sqr(), dim).into_iter().collect();
    Ok(Flagged { value: gen.expm(), warnings })
}

/// Dimensionless quadratures `(x, p, q)`: `x = (b + b†)/√2`,
/// `p = −i(b − b†)/√2` for the motion and `q = (a + a†)/√2` for the LC
/// charge. All three share the same truncation.
pub fn quadratures(dim: usize) -> Result<(QOperator, QOperator, QOperator)> {
    let b = annihilation(dim)?;
    let bd = b.dagger();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x = (&b + &bd).scale_re(s);
    let p = (&b - &bd).scale(C64::new(0.0, -s));
    Ok((x.clone(), p, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn annihilation_entries() {
        let a = annihilation(3).unwrap();
        assert_eq!(a.element(0, 1), c(1.0));
        assert!((a.element(1, 2) - c(SQRT_2)).norm() < 1e-15);
        let nonzero = a.matrix().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 2);
        let a2 = annihilation(2).unwrap();
        assert_eq!(a2.matrix().as_slice().unwrap(), &[c(0.), c(1.), c(0.), c(0.)]);
        assert!(matches!(annihilation(1), Err(Error::InvalidDimension { .. })));
    }

    #[test]
    fn canonical_commutator_below_top_level() {
        let a = annihilation(8).unwrap();
        let comm = a.commutator(&a.dagger()).unwrap();
        for m in 0..7 {
            for n in 0..7 {
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((comm.element(m, n) - c(want)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (pauli(Axis::X), pauli(Axis::Y), pauli(Axis::Z));
        assert_eq!(z.element(0, 0), c(1.0));
        assert_eq!(z.element(1, 1), c(-1.0));
        assert!((&x * &x).max_abs_diff(&QOperator::identity(x.layout())) < 1e-15);
        let comm = x.commutator(&y).unwrap();
        assert!(comm.max_abs_diff(&z.scale(C64::new(0.0, 2.0))) < 1e-15);
        for p in [&x, &y, &z] {
            assert_eq!(p.hermiticity_residual(), 0.0);
        }
    }

    #[test]
    fn embed_examples() {
        let layout = ModeLayout::new([("spin", 2), ("lc", 3)]).unwrap();
        let sz = embed(&pauli(Axis::Z), &layout, "spin").unwrap();
        assert!(sz.trace().norm() < 1e-15);
        let a = embed(&annihilation(3).unwrap(), &layout, "lc").unwrap();
        assert!(a.commutator(&sz).unwrap().max_abs() < 1e-15);
        let big = ModeLayout::new([("spin", 2), ("lc", 4), ("motion", 4)]).unwrap();
        assert_eq!(embed(&annihilation(4).unwrap(), &big, "motion").unwrap().dim(), 32);
        assert!(matches!(embed(&annihilation(3).unwrap(), &big, "lc"), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(embed(&pauli(Axis::X), &big, "nope"), Err(Error::LabelNotFound(_))));
    }

    #[test]
    fn embed_matches_kron() {
        let layout = ModeLayout::new([("spin", 2), ("lc", 3)]).unwrap();
        let a = relabel(&annihilation(3).unwrap(), "lc").unwrap();
        let both = kron(&pauli(Axis::Y), &a).unwrap();
        let sub = embed_sub(&both, &layout).unwrap();
        let manual = &embed(&pauli(Axis::Y), &layout, "spin").unwrap() * &embed(&a, &layout, "lc").unwrap();
        assert!(sub.max_abs_diff(&manual) < 1e-15);
    }

    #[test]
    fn displacement_basics() {
        let d0 = displacement(C64::new(0.0, 0.0), 6).unwrap().value;
        assert!(d0.max_abs_diff(&QOperator::identity(d0.layout())) < 1e-15);
        let alpha = C64::new(0.6, 0.8);
        let d = displacement(alpha, 32).unwrap();
        assert!(d.warnings.is_empty());
        let dm = displacement(-alpha, 32).unwrap().value;
        assert!((&d.value * &dm).max_abs_diff(&QOperator::identity(dm.layout())) < 1e-8);
        assert_eq!(displacement(C64::new(3.0, 0.0), 16).unwrap().warnings.len(), 1);
    }

    #[test]
    fn quadrature_examples() {
        let (x, p, q) = quadratures(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((x.element(0, 1) - c(s)).norm() < 1e-16 && (x.element(1, 0) - c(s)).norm() < 1e-16);
        assert!(q.hermiticity_residual() < 1e-15 && p.hermiticity_residual() < 1e-15);
        let (x, p, _) = quadratures(6).unwrap();
        let comm = x.commutator(&p).unwrap();
        assert!((comm.element(0, 0) - C64::new(0.0, 1.0)).norm() < 1e-14);
    }
}

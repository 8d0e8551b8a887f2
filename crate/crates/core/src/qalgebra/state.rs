// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use super::layout::ModeLayout;
use super::linalg;
use super::operator::{Flagged, QOperator, TruncationWarning};
use crate::error::{Error, Result};

pub const PURE_NORM_TOL: f64 = 1e-9;
pub const TRACE_TOL: f64 = 1e-9;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const MIN_EIGENVALUE: f64 = -1e-10;

/// Pure state vector or density matrix on a composite space.
#[derive(Debug, Clone, PartialEq)]
pub enum QState {
    Pure { layout: ModeLayout, psi: Array1<C64> },
    Mixed { layout: ModeLayout, rho: Array2<C64> },
}

/// Outcome of the state validity checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub trace_error: f64,
    pub hermiticity: f64,
    pub min_eigenvalue: f64,
}

impl QState {
    pub fn pure(layout: ModeLayout, psi: Array1<C64>) -> Result<Self> {
        if psi.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch { expected: layout.total_dim(), found: psi.len() });
        }
        Ok(Self::Pure { layout, psi })
    }

    pub fn mixed(layout: ModeLayout, rho: Array2<C64>) -> Result<Self> {
        let n = layout.total_dim();
        if rho.nrows() != n || rho.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rho.nrows() });
        }
        Ok(Self::Mixed { layout, rho })
    }

    /// Normalise a raw amplitude vector.
    pub fn normalized(layout: ModeLayout, psi: Array1<C64>) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Self::pure(layout, psi.mapv(|z| z / norm))
    }

    pub fn basis(layout: &ModeLayout, digits: &[usize]) -> Result<Self> {
        if digits.len() != layout.len() || digits.iter().zip(layout.dims()).any(|(&n, &d)| n >= d) {
            return Err(Error::InvalidState(format!("basis digits {digits:?} outside layout {:?}", layout.dims())));
        }
        let mut psi = Array1::zeros(layout.total_dim());
        psi[layout.index(digits)] = C64::new(1.0, 0.0);
        Self::pure(layout.clone(), psi)
    }

    pub fn layout(&self) -> &ModeLayout {
        match self {
            Self::Pure { layout, .. } | Self::Mixed { layout, .. } => layout,
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, Self::Pure { .. })
    }

    pub fn as_vector(&self) -> Option<&Array1<C64>> {
        match self {
            Self::Pure { psi, .. } => Some(psi),
            Self::Mixed { .. } => None,
        }
    }

    pub fn density_matrix(&self) -> Array2<C64> {
        match self {
            Self::Pure { psi, .. } => {
                let n = psi.len();
                Array2::from_shape_fn((n, n), |(i, j)| psi[i] * psi[j].conj())
            }
            Self::Mixed { rho, .. } => rho.clone(),
        }
    }

    pub fn to_mixed(&self) -> Self {
        Self::Mixed { layout: self.layout().clone(), rho: self.density_matrix() }
    }

    pub fn norm(&self) -> f64 {
        match self {
            Self::Pure { psi, .. } => psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
            Self::Mixed { rho, .. } => linalg::trace(rho).re,
        }
    }

    pub fn diagnostics(&self) -> StateDiagnostics {
        match self {
            Self::Pure { .. } => StateDiagnostics {
                trace_error: (self.norm() - 1.0).abs(),
                hermiticity: 0.0,
                min_eigenvalue: 0.0,
            },
            Self::Mixed { rho, .. } => StateDiagnostics {
                trace_error: (linalg::trace(rho) - C64::new(1.0, 0.0)).norm(),
                hermiticity: linalg::max_abs_diff(rho, &linalg::dagger(rho)),
                min_eigenvalue: linalg::eigh(rho).0[0],
            },
        }
    }

    /// Checks the pure/mixed validity invariants.
    pub fn validate(&self) -> Result<()> {
        let d = self.diagnostics();
        let ok = match self {
            Self::Pure { .. } => d.trace_error <= PURE_NORM_TOL,
            Self::Mixed { .. } => {
                d.trace_error <= TRACE_TOL && d.hermiticity <= HERMITIAN_TOL && d.min_eigenvalue >= MIN_EIGENVALUE
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidState(format!("{d:?}")))
        }
    }

    pub fn expectation(&self, op: &QOperator) -> Result<C64> {
        if op.layout() != self.layout() {
            return Err(Error::LayoutMismatch("operator and state layouts differ".into()));
        }
        Ok(match self {
            Self::Pure { psi, .. } => {
                let h = op.matrix().dot(psi);
                psi.iter().zip(h.iter()).map(|(a, b)| a.conj() * b).sum()
            }
            Self::Mixed { rho, .. } => linalg::trace(&op.matrix().dot(rho)),
        })
    }

    pub fn apply(&self, op: &QOperator) -> Result<Self> {
        if op.layout() != self.layout() {
            return Err(Error::LayoutMismatch("operator and state layouts differ".into()));
        }
        Ok(match self {
            Self::Pure { layout, psi } => Self::Pure { layout: layout.clone(), psi: op.matrix().dot(psi) },
            Self::Mixed { layout, rho } => Self::Mixed {
                layout: layout.clone(),
                rho: op.matrix().dot(rho).dot(&linalg::dagger(op.matrix())),
            },
        })
    }

    pub fn purity(&self) -> f64 {
        match self {
            Self::Pure { .. } => self.norm().powi(4),
            Self::Mixed { rho, .. } => linalg::frobenius_inner(rho, rho).re,
        }
    }

    /// Reduced density matrix on the named subsystems (kept in layout order).
    pub fn reduced(&self, keep: &[&str]) -> Result<Self> {
        let layout = self.layout();
        let sub = layout.sub_layout(keep)?;
        let kept: Vec<usize> = sub.labels().iter().map(|l| layout.slot(l)).collect::<Result<_>>()?;
        let rho = self.density_matrix();
        let n = layout.total_dim();
        let m = sub.total_dim();
        let mut out = Array2::zeros((m, m));
        // Pair up indices that agree on every traced-out slot.
        let digits: Vec<Vec<usize>> = (0..n).map(|i| layout.digits(i)).collect();
        let sub_index = |d: &[usize]| kept.iter().fold(0, |acc, &s| acc * layout.dims()[s] + d[s]);
        let env_key = |d: &[usize]| {
            d.iter()
                .enumerate()
                .filter(|(k, _)| !kept.contains(k))
                .fold(0, |acc, (k, &v)| acc * layout.dims()[k] + v)
        };
        let keys: Vec<(usize, usize)> = digits.iter().map(|d| (sub_index(d), env_key(d))).collect();
        for i in 0..n {
            for j in 0..n {
                if keys[i].1 == keys[j].1 {
                    out[[keys[i].0, keys[j].0]] += rho[[i, j]];
                }
            }
        }
        Self::mixed(sub, out)
    }

    /// Tensor product of two states.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let layout = ModeLayout::new(
            self.layout()
                .labels()
                .iter()
                .zip(self.layout().dims())
                .chain(other.layout().labels().iter().zip(other.layout().dims()))
                .map(|(l, &d)| (l.clone(), d)),
        )?;
        match (self, other) {
            (Self::Pure { psi: a, .. }, Self::Pure { psi: b, .. }) => {
                let nb = b.len();
                let psi = Array1::from_shape_fn(a.len() * nb, |i| a[i / nb] * b[i % nb]);
                Self::pure(layout, psi)
            }
            _ => {
                let (ra, rb) = (self.density_matrix(), other.density_matrix());
                let nb = rb.nrows();
                let n = ra.nrows() * nb;
                let rho = Array2::from_shape_fn((n, n), |(r, c)| ra[[r / nb, c / nb]] * rb[[r % nb, c % nb]]);
                Self::mixed(layout, rho)
            }
        }
    }

    /// Product state of several factors, e.g. `spin ⊗ lc ⊗ motion`.
    pub fn product(factors: &[QState]) -> Result<Self> {
        let mut it = factors.iter();
        let first = it.next().ok_or_else(|| Error::InvalidState("empty product".into()))?.clone();
        it.try_fold(first, |acc, f| acc.tensor(f))
    }

    /// Same amplitudes under a new set of labels.
    pub fn relabel(&self, labels: &[&str]) -> Result<Self> {
        if labels.len() != self.layout().len() {
            return Err(Error::LayoutMismatch("label count differs".into()));
        }
        let layout = ModeLayout::new(labels.iter().zip(self.layout().dims()).map(|(l, &d)| (*l, d)))?;
        Ok(match self {
            Self::Pure { psi, .. } => Self::Pure { layout, psi: psi.clone() },
            Self::Mixed { rho, .. } => Self::Mixed { layout, rho: rho.clone() },
        })
    }
}

/// Fock state `|n⟩` on a mode labelled `label`.
pub fn fock_state(label: &str, dim: usize, n: usize) -> Result<QState> {
    if dim < 2 {
        return Err(Error::InvalidDimension { dim, reason: "a bosonic mode needs at least 2 levels" });
    }
    QState::basis(&ModeLayout::single(label, dim)?, &[n])
}

/// Truncated coherent state, renormalised after truncation.
pub fn coherent_state(label: &str, alpha: C64, dim: usize) -> Result<Flagged<QState>> {
    if dim < 2 {
        return Err(Error::InvalidDimension { dim, reason: "a bosonic mode needs at least 2 levels" });
    }
    let mut amp = Array1::zeros(dim);
    let mut term = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    amp[0] = term;
    for n in 1..dim {
        term = term * alpha / (n as f64).sqrt();
        amp[n] = term;
    }
    let warnings = TruncationWarning::check(alpha.norm_sqr(), dim).into_iter().collect();
    Ok(Flagged { value: QState::normalized(ModeLayout::single(label, dim)?, amp)?, warnings })
}

/// Cat state `N(|α⟩ + e^{iφ}|−α⟩)`.
pub fn cat_state(label: &str, alpha: C64, phi: f64, dim: usize) -> Result<Flagged<QState>> {
    let plus = coherent_state(label, alpha, dim)?;
    let minus = coherent_state(label, -alpha, dim)?;
    let (Some(p), Some(m)) = (plus.value.as_vector(), minus.value.as_vector()) else {
        unreachable!("coherent states are pure")
    };
    let phase = C64::from_polar(1.0, phi);
    let raw = p + &m.mapv(|z| z * phase);
    Ok(Flagged { value: QState::normalized(ModeLayout::single(label, dim)?, raw)?, warnings: plus.warnings })
}

/// Spin state from amplitudes on (|↑⟩, |↓⟩).
pub fn spin_state(label: &str, up: C64, down: C64) -> Result<QState> {
    QState::normalized(ModeLayout::single(label, 2)?, Array1::from(vec![up, down]))
}

pub fn spin_up(label: &str) -> QState {
    spin_state(label, C64::new(1.0, 0.0), C64::new(0.0, 0.0)).expect("static state")
}

pub fn spin_down(label: &str) -> QState {
    spin_state(label, C64::new(0.0, 0.0), C64::new(1.0, 0.0)).expect("static state")
}

/// σx eigenstate with eigenvalue `sign` (±1).
pub fn spin_x(label: &str, sign: f64) -> QState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    spin_state(label, C64::new(s, 0.0), C64::new(sign.signum() * s, 0.0)).expect("static state")
}

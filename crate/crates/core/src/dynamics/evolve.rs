// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use ndarray::{Array1, Array2, Axis as NdAxis};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::integrator::{integrate, StepOptions, StepStats};
use crate::error::{Error, Result};
use crate::hamiltonians::{Envelope, TimeDependentHamiltonian};
use crate::qalgebra::linalg;
use crate::qalgebra::sparse::Csr;
use crate::qalgebra::{QOperator, QState};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const MIN_TOLERANCE: f64 = 1e-12;
pub const MAX_TOLERANCE: f64 = 1e-4;

/// Jump operator `L` with rate `γ`; the dissipator uses `√γ L`.
#[derive(Debug, Clone)]
pub struct CollapseOp {
    pub operator: QOperator,
    pub rate: f64,
}

#[derive(Debug, Clone)]
pub struct EvolutionSpec {
    pub hamiltonian: TimeDependentHamiltonian,
    pub t_final: f64,
    pub tolerance: f64,
    pub collapse_ops: Vec<CollapseOp>,
    pub sample_times: Vec<f64>,
    pub observables: Vec<(String, QOperator)>,
}

impl EvolutionSpec {
    pub fn new(hamiltonian: TimeDependentHamiltonian, t_final: f64) -> Self {
        Self {
            hamiltonian,
            t_final,
            tolerance: DEFAULT_TOLERANCE,
            collapse_ops: Vec::new(),
            sample_times: Vec::new(),
            observables: Vec::new(),
        }
    }

    pub fn tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn collapse(mut self, operator: QOperator, rate: f64) -> Self {
        self.collapse_ops.push(CollapseOp { operator, rate });
        self
    }

    pub fn collapse_all(mut self, ops: impl IntoIterator<Item = CollapseOp>) -> Self {
        self.collapse_ops.extend(ops);
        self
    }

    /// `count` evenly spaced samples over `[0, t_final]`, endpoints included.
    pub fn uniform_samples(mut self, count: usize) -> Self {
        let n = count.max(2);
        self.sample_times = (0..n).map(|k| self.t_final * k as f64 / (n - 1) as f64).collect();
        self
    }

    pub fn samples(mut self, times: Vec<f64>) -> Self {
        self.sample_times = times;
        self
    }

    pub fn observe(mut self, name: impl Into<String>, op: QOperator) -> Self {
        self.observables.push((name.into(), op));
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::InvalidParameter { name: "t_final", reason: format!("must be finite and > 0, got {}", self.t_final) });
        }
        if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&self.tolerance) {
            return Err(Error::InvalidParameter {
                name: "tolerance",
                reason: format!("must lie in [{MIN_TOLERANCE:e}, {MAX_TOLERANCE:e}], got {:e}", self.tolerance),
            });
        }
        let layout = self.hamiltonian.layout();
        for c in &self.collapse_ops {
            if !(c.rate >= 0.0 && c.rate.is_finite()) {
                return Err(Error::InvalidParameter { name: "rate", reason: format!("must be finite and >= 0, got {}", c.rate) });
            }
            if c.operator.layout() != layout {
                return Err(Error::LayoutMismatch("collapse operator layout differs from the Hamiltonian".into()));
            }
        }
        for (name, op) in &self.observables {
            if op.layout() != layout {
                return Err(Error::LayoutMismatch(format!("observable {name} layout differs from the Hamiltonian")));
            }
        }
        let mut prev = 0.0;
        for &t in &self.sample_times {
            if !(t >= prev && t <= self.t_final) {
                return Err(Error::InvalidParameter { name: "sample_times", reason: "must be sorted within [0, t_final]".into() });
            }
            prev = t;
        }
        Ok(())
    }

    fn step_options(&self) -> StepOptions {
        StepOptions::with_tolerance(self.tolerance)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableSeries {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SimulationResult {
    pub final_state: QState,
    pub times: Vec<f64>,
    pub observables: Vec<ObservableSeries>,
    /// Norm (pure) or trace (mixed) at each sample time.
    pub norms: Vec<f64>,
    pub stats: StepStats,
    /// Largest deviation of the norm or trace from 1 over samples and the end point.
    pub conservation_error: f64,
    pub hermiticity: f64,
    pub min_eigenvalue: f64,
    /// Shift of the headline figure under doubled truncation, when measured.
    pub truncation_delta: Option<f64>,
}

impl SimulationResult {
    pub fn series(&self, name: &str) -> Option<&[f64]> {
        self.observables.iter().find(|s| s.name == name).map(|s| s.values.as_slice())
    }
}

/// Sparse image of `H(t) = Σ f_k(t) H_k`.
pub(crate) struct CompiledHamiltonian {
    terms: Vec<(Csr, Envelope)>,
}

impl CompiledHamiltonian {
    pub(crate) fn new(h: &TimeDependentHamiltonian) -> Self {
        Self { terms: h.terms().iter().map(|t| (Csr::from_dense(t.operator.matrix()), t.envelope.clone())).collect() }
    }

    /// `out = −i H(t) y`.
    pub(crate) fn schrodinger(&self, t: f64, y: &Array2<C64>, out: &mut Array2<C64>) {
        out.fill(C64::new(0.0, 0.0));
        for (op, f) in &self.terms {
            let c = f(t);
            if c != C64::new(0.0, 0.0) {
                op.mul_add(C64::new(0.0, -1.0) * c, y.view(), out.view_mut());
            }
        }
    }
}

struct CompiledLindblad {
    hamiltonian: CompiledHamiltonian,
    jumps: Vec<(Csr, Csr)>,
    /// `−(1/2) Σ L†L`.
    damping: Option<Csr>,
    scratch: Array2<C64>,
}

impl CompiledLindblad {
    fn new(h: &TimeDependentHamiltonian, collapse: &[CollapseOp]) -> Self {
        let n = h.layout().total_dim();
        let mut sum = Array2::<C64>::zeros((n, n));
        let mut jumps = Vec::new();
        for c in collapse.iter().filter(|c| c.rate > 0.0) {
            let l = c.operator.matrix().mapv(|v| v * c.rate.sqrt());
            let ld = linalg::dagger(&l);
            sum = sum + ld.dot(&l);
            jumps.push((Csr::from_dense(&l), Csr::from_dense(&ld)));
        }
        let damping = (!jumps.is_empty()).then(|| Csr::from_dense(&sum.mapv(|v| v * -0.5)));
        Self { hamiltonian: CompiledHamiltonian::new(h), jumps, damping, scratch: Array2::zeros((n, n)) }
    }

    /// `dρ = −i[H, ρ] + Σ (L ρ L† − ½{L†L, ρ})`.
    fn rhs(&mut self, t: f64, rho: &Array2<C64>, out: &mut Array2<C64>) {
        out.fill(C64::new(0.0, 0.0));
        let one = C64::new(1.0, 0.0);
        for (op, f) in &self.hamiltonian.terms {
            let c = f(t);
            if c != C64::new(0.0, 0.0) {
                op.mul_add(C64::new(0.0, -1.0) * c, rho.view(), out.view_mut());
                op.right_mul_add(C64::new(0.0, 1.0) * c, rho.view(), out.view_mut());
            }
        }
        if let Some(d) = &self.damping {
            d.mul_add(one, rho.view(), out.view_mut());
            d.right_mul_add(one, rho.view(), out.view_mut());
        }
        for (l, ld) in &self.jumps {
            self.scratch.fill(C64::new(0.0, 0.0));
            l.mul_add(one, rho.view(), self.scratch.view_mut());
            ld.right_mul_add(one, self.scratch.view(), out.view_mut());
        }
    }
}

fn expectation_pure(op: &QOperator, psi: &Array2<C64>) -> f64 {
    let v = psi.column(0);
    let ov = op.matrix().dot(&v);
    v.iter().zip(ov.iter()).map(|(a, b)| a.conj() * b).sum::<C64>().re
}

fn expectation_mixed(op: &QOperator, rho: &Array2<C64>) -> f64 {
    linalg::trace(&op.matrix().dot(rho)).re
}

fn pure_norm(psi: &Array2<C64>) -> f64 {
    psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Time-dependent Schrödinger evolution of a pure state.
pub fn evolve_pure(spec: &EvolutionSpec, psi0: &QState) -> Result<SimulationResult> {
    spec.validate()?;
    if !spec.collapse_ops.is_empty() {
        return Err(Error::InvalidParameter { name: "collapse_ops", reason: "evolve_pure requires a closed system".into() });
    }
    let layout = spec.hamiltonian.layout().clone();
    if psi0.layout() != &layout {
        return Err(Error::LayoutMismatch("initial state layout differs from the Hamiltonian".into()));
    }
    let v = psi0.as_vector().ok_or_else(|| Error::InvalidState("evolve_pure requires a pure initial state".into()))?;
    psi0.validate()?;
    let y0 = v.clone().insert_axis(NdAxis(1));
    let h = CompiledHamiltonian::new(&spec.hamiltonian);
    let mut series: Vec<Vec<f64>> = vec![Vec::new(); spec.observables.len()];
    let mut norms = Vec::new();
    let (y, stats) = integrate(
        |t, y, dy| h.schrodinger(t, y, dy),
        0.0,
        y0,
        spec.t_final,
        &spec.sample_times,
        &spec.step_options(),
        |_, y| {
            norms.push(pure_norm(y));
            for (s, (_, op)) in series.iter_mut().zip(&spec.observables) {
                s.push(expectation_pure(op, y));
            }
        },
    )?;
    let final_norm = pure_norm(&y);
    let conservation_error = norms.iter().chain(std::iter::once(&final_norm)).fold(0.0f64, |m, n| m.max((n - 1.0).abs()));
    let psi: Array1<C64> = y.column(0).to_owned();
    Ok(SimulationResult {
        final_state: QState::pure(layout, psi)?,
        times: spec.sample_times.clone(),
        observables: named(spec, series),
        norms,
        stats,
        conservation_error,
        hermiticity: 0.0,
        min_eigenvalue: 0.0,
        truncation_delta: None,
    })
}

/// Lindblad master-equation evolution of a density matrix.
pub fn evolve_lindblad(spec: &EvolutionSpec, rho0: &QState) -> Result<SimulationResult> {
    spec.validate()?;
    let layout = spec.hamiltonian.layout().clone();
    if rho0.layout() != &layout {
        return Err(Error::LayoutMismatch("initial state layout differs from the Hamiltonian".into()));
    }
    rho0.validate()?;
    let mut l = CompiledLindblad::new(&spec.hamiltonian, &spec.collapse_ops);
    let mut series: Vec<Vec<f64>> = vec![Vec::new(); spec.observables.len()];
    let mut norms = Vec::new();
    let (rho, stats) = integrate(
        |t, y, dy| l.rhs(t, y, dy),
        0.0,
        rho0.density_matrix(),
        spec.t_final,
        &spec.sample_times,
        &spec.step_options(),
        |_, y| {
            norms.push(linalg::trace(y).re);
            for (s, (_, op)) in series.iter_mut().zip(&spec.observables) {
                s.push(expectation_mixed(op, y));
            }
        },
    )?;
    let final_trace = linalg::trace(&rho).re;
    let conservation_error = norms.iter().chain(std::iter::once(&final_trace)).fold(0.0f64, |m, n| m.max((n - 1.0).abs()));
    let hermiticity = linalg::max_abs_diff(&rho, &linalg::dagger(&rho));
    let herm = (&rho + &linalg::dagger(&rho)).mapv(|v| v * 0.5);
    let (ev, _) = linalg::eigh(&herm);
    let min_eigenvalue = ev.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(SimulationResult {
        final_state: QState::mixed(layout, rho)?,
        times: spec.sample_times.clone(),
        observables: named(spec, series),
        norms,
        stats,
        conservation_error,
        hermiticity,
        min_eigenvalue,
        truncation_delta: None,
    })
}

/// Unitary `U(t_final)` from integrating `dU/dt = −i H(t) U`.
pub fn evolve_propagator(hamiltonian: &TimeDependentHamiltonian, t_final: f64, tolerance: f64) -> Result<QOperator> {
    let spec = EvolutionSpec::new(hamiltonian.clone(), t_final).tolerance(tolerance);
    spec.validate()?;
    let n = hamiltonian.layout().total_dim();
    let h = CompiledHamiltonian::new(hamiltonian);
    let (u, _) = integrate(|t, y, dy| h.schrodinger(t, y, dy), 0.0, linalg::identity(n), t_final, &[], &spec.step_options(), |_, _| {})?;
    QOperator::new(hamiltonian.layout().clone(), u)
}

fn named(spec: &EvolutionSpec, series: Vec<Vec<f64>>) -> Vec<ObservableSeries> {
    spec.observables.iter().zip(series).map(|((name, _), values)| ObservableSeries { name: name.clone(), values }).collect()
}

// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qalgebra::{ModeLayout, QOperator};

/// Scalar time dependence of one Hamiltonian term.
pub type Envelope = Arc<dyn Fn(f64) -> C64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    Lab,
    Interaction,
    Rotating,
}

/// A parameter-regime assumption that the inputs violate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeWarning {
    pub condition: String,
    pub ratio: f64,
}

#[derive(Clone)]
pub struct Term {
    pub operator: QOperator,
    pub envelope: Envelope,
}

/// `H(t) = Σ_k f_k(t) H_k`. Terms with complex envelopes must be paired with
/// their adjoints by the builder.
#[derive(Clone)]
pub struct TimeDependentHamiltonian {
    layout: ModeLayout,
    frame: Frame,
    terms: Vec<Term>,
    warnings: Vec<RegimeWarning>,
}

impl fmt::Debug for TimeDependentHamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TimeDependentHamiltonian")
            .field("layout", &self.layout)
            .field("frame", &self.frame)
            .field("terms", &self.terms.len())
            .field("warnings", &self.warnings)
            .finish()
    }
}

impl TimeDependentHamiltonian {
    pub fn new(layout: ModeLayout, frame: Frame) -> Self {
        Self { layout, frame, terms: Vec::new(), warnings: Vec::new() }
    }

    pub fn add_static(&mut self, operator: QOperator) -> Result<()> {
        self.add_term(operator, Arc::new(|_| C64::new(1.0, 0.0)))
    }

    pub fn add_term(&mut self, operator: QOperator, envelope: Envelope) -> Result<()> {
        if operator.layout() != &self.layout {
            return Err(Error::LayoutMismatch(format!("{:?} vs {:?}", operator.layout().labels(), self.layout.labels())));
        }
        self.terms.push(Term { operator, envelope });
        Ok(())
    }

    /// Adds `f(t) X + conj(f(t)) X†`.
    pub fn add_hermitian_pair(&mut self, operator: QOperator, envelope: Envelope) -> Result<()> {
        let adjoint = operator.dagger();
        let f = envelope.clone();
        self.add_term(operator, envelope)?;
        self.add_term(adjoint, Arc::new(move |t| f(t).conj()))
    }

    pub(crate) fn warn(&mut self, condition: impl Into<String>, ratio: f64) {
        self.warnings.push(RegimeWarning { condition: condition.into(), ratio });
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn warnings(&self) -> &[RegimeWarning] {
        &self.warnings
    }

    pub fn at(&self, t: f64) -> QOperator {
        let mut m = QOperator::zeros(&self.layout).into_matrix();
        for term in &self.terms {
            let c = (term.envelope)(t);
            if c != C64::new(0.0, 0.0) {
                m.scaled_add(c, term.operator.matrix());
            }
        }
        QOperator::from_parts(self.layout.clone(), m)
    }

    pub fn hermiticity_residual(&self, t: f64) -> f64 {
        self.at(t).hermiticity_residual()
    }

    /// Sum of `|f_k(t)|·‖H_k‖_max`, a cheap scale for step-size heuristics.
    pub fn norm_bound(&self, t: f64) -> f64 {
        self.terms.iter().map(|term| (term.envelope)(t).norm() * term.operator.max_abs()).sum()
    }
}

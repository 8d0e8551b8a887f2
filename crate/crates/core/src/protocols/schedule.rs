// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use crate::dynamics::{evolve_lindblad, evolve_propagator, evolve_pure, CollapseOp, EvolutionSpec, SimulationResult};
use crate::error::{Error, Result};
use crate::hamiltonians::TimeDependentHamiltonian;
use crate::qalgebra::linalg;
use crate::qalgebra::{ModeLayout, QOperator, QState};

pub const GATE_UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub enum Segment {
    /// Evolution under `hamiltonian` for `duration`, with the segment clock
    /// starting at zero.
    Evolve { hamiltonian: TimeDependentHamiltonian, duration: f64 },
    /// Instantaneous unitary.
    Gate(QOperator),
}

#[derive(Debug, Clone)]
pub struct PulseSchedule {
    layout: ModeLayout,
    segments: Vec<Segment>,
}

impl PulseSchedule {
    pub fn new(layout: ModeLayout) -> Self {
        Self { layout, segments: Vec::new() }
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn evolve(mut self, hamiltonian: TimeDependentHamiltonian, duration: f64) -> Result<Self> {
        if !(duration >= 0.0 && duration.is_finite()) {
            return Err(Error::InvalidParameter { name: "duration", reason: format!("must be finite and >= 0, got {duration}") });
        }
        if hamiltonian.layout() != &self.layout {
            return Err(Error::LayoutMismatch("segment layout differs from the schedule".into()));
        }
        self.segments.push(Segment::Evolve { hamiltonian, duration });
        Ok(self)
    }

    pub fn gate(mut self, op: QOperator) -> Result<Self> {
        if op.layout() != &self.layout {
            return Err(Error::LayoutMismatch("gate layout differs from the schedule".into()));
        }
        let residual = op.unitarity_residual();
        if residual > GATE_UNITARITY_TOL {
            return Err(Error::InvalidParameter { name: "gate", reason: format!("not unitary (residual {residual:e})") });
        }
        self.segments.push(Segment::Gate(op));
        Ok(self)
    }

    /// Appends every segment of `other`.
    pub fn then(mut self, other: &PulseSchedule) -> Result<Self> {
        if other.layout != self.layout {
            return Err(Error::LayoutMismatch("schedules have different layouts".into()));
        }
        self.segments.extend(other.segments.iter().cloned());
        Ok(self)
    }

    pub fn total_duration(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| match s {
                Segment::Evolve { duration, .. } => *duration,
                Segment::Gate(_) => 0.0,
            })
            .sum()
    }

    /// End-to-end propagator, later segments to the left.
    pub fn propagator(&self, tolerance: f64) -> Result<QOperator> {
        let mut u = QOperator::identity(&self.layout);
        for s in &self.segments {
            let step = match s {
                Segment::Evolve { duration, .. } if *duration == 0.0 => continue,
                Segment::Evolve { hamiltonian, duration } => segment_propagator(hamiltonian, *duration, tolerance)?,
                Segment::Gate(g) => g.clone(),
            };
            u = step.compose(&u)?;
        }
        Ok(u)
    }

    pub fn run_pure(&self, psi0: &QState, tolerance: f64) -> Result<QState> {
        let mut psi = psi0.clone();
        for s in &self.segments {
            psi = match s {
                Segment::Evolve { duration, .. } if *duration == 0.0 => psi,
                Segment::Evolve { hamiltonian, duration } => {
                    evolve_pure(&EvolutionSpec::new(hamiltonian.clone(), *duration).tolerance(tolerance), &psi)?.final_state
                }
                Segment::Gate(g) => psi.apply(g)?,
            };
        }
        Ok(psi)
    }

    /// Lindblad evolution with the same collapse operators on every
    /// evolution segment; gates act as `U ρ U†`.
    pub fn run_lindblad(&self, rho0: &QState, collapse: &[CollapseOp], tolerance: f64) -> Result<ScheduleRun> {
        let mut rho = rho0.to_mixed();
        let mut worst = ScheduleRun { state: rho.clone(), conservation_error: 0.0, hermiticity: 0.0, min_eigenvalue: 0.0 };
        for s in &self.segments {
            rho = match s {
                Segment::Evolve { duration, .. } if *duration == 0.0 => rho,
                Segment::Evolve { hamiltonian, duration } => {
                    let spec = EvolutionSpec::new(hamiltonian.clone(), *duration)
                        .tolerance(tolerance)
                        .collapse_all(collapse.iter().cloned());
                    let r: SimulationResult = evolve_lindblad(&spec, &rho)?;
                    worst.conservation_error = worst.conservation_error.max(r.conservation_error);
                    worst.hermiticity = worst.hermiticity.max(r.hermiticity);
                    worst.min_eigenvalue = worst.min_eigenvalue.min(r.min_eigenvalue);
                    r.final_state
                }
                Segment::Gate(g) => {
                    let m = g.matrix().dot(&rho.density_matrix()).dot(&linalg::dagger(g.matrix()));
                    QState::mixed(self.layout.clone(), m)?
                }
            };
        }
        worst.state = rho;
        Ok(worst)
    }
}

/// Final state of a Lindblad schedule run with the worst diagnostics seen.
#[derive(Debug, Clone)]
pub struct ScheduleRun {
    pub state: QState,
    pub conservation_error: f64,
    pub hermiticity: f64,
    pub min_eigenvalue: f64,
}

fn segment_propagator(h: &TimeDependentHamiltonian, duration: f64, tolerance: f64) -> Result<QOperator> {
    let is_static = h.terms().iter().all(|t| {
        let f0 = (t.envelope)(0.0);
        [0.25, 0.5, 1.0].iter().all(|&x| (t.envelope)(x * duration) == f0)
    });
    if is_static {
        Ok(h.at(0.0).evolution(duration))
    } else {
        evolve_propagator(h, duration, tolerance)
    }
}

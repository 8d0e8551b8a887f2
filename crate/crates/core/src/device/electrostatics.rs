// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Geometric factor of two coplanar strip electrodes.
//!
//! The cross-section is solved as a 2D Dirichlet problem in a grounded box:
//! the bottom plane holds the strips at `±V/2` and is grounded elsewhere,
//! including the gap. The ion sits above the gap centre. The mesh is a tensor
//! grid with breakpoints at every electrode edge and at the ion height,
//! uniform over the electrodes and geometrically graded towards the box walls.
//! Both resolutions use the same smooth node mapping, so the fine grid bisects
//! the coarse one and Richardson extrapolation applies.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};

pub const MIN_RESOLUTION: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElectrodeGeometry {
    /// Strip width `R` (m).
    pub island_side: f64,
    /// Gap `s` between the strips (m).
    pub gap: f64,
    /// Ion height `h` above the electrode plane (m).
    pub ion_height: f64,
    /// Coarse-grid cells across the electrode extent `2R + s`.
    pub resolution: usize,
}

impl ElectrodeGeometry {
    pub fn new(island_side: f64, gap: f64, ion_height: f64, resolution: usize) -> Result<Self> {
        let geom = Self { island_side, gap, ion_height, resolution };
        geom.validate()?;
        Ok(geom)
    }

    pub fn operating_point() -> Self {
        Self { island_side: 50e-6, gap: 10e-6, ion_height: 25e-6, resolution: MIN_RESOLUTION }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("island_side", self.island_side)?;
        ensure_positive("gap", self.gap)?;
        ensure_positive("ion_height", self.ion_height)?;
        if self.resolution < MIN_RESOLUTION {
            return Err(Error::InvalidParameter {
                name: "resolution",
                reason: format!("must be >= {MIN_RESOLUTION}, got {}", self.resolution),
            });
        }
        Ok(())
    }

    fn extent(&self) -> f64 {
        2.0 * self.island_side + self.gap
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Stop when the largest normalised interior residual falls below this (V = 1).
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Box width in units of the electrode extent.
    pub box_width: f64,
    /// Box height in units of the electrode extent.
    pub box_height: f64,
    /// Cell growth ratio of the graded far-field segments on the coarse grid.
    pub growth: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tolerance: 1e-8, max_iterations: 200_000, box_width: 10.0, box_height: 5.0, growth: 1.08 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometricFactor {
    /// Richardson-extrapolated value.
    pub zeta: f64,
    pub zeta_coarse: f64,
    pub zeta_fine: f64,
    pub max_residual: f64,
    pub iterations: usize,
}

impl GeometricFactor {
    pub fn grid_change(&self) -> f64 {
        (self.zeta_fine - self.zeta_coarse).abs()
    }
}

/// `ζ = E_z h / V` at the ion position.
pub fn geometric_factor(geom: &ElectrodeGeometry) -> Result<GeometricFactor> {
    geometric_factor_with(geom, &SolverOptions::default())
}

pub fn geometric_factor_with(geom: &ElectrodeGeometry, opts: &SolverOptions) -> Result<GeometricFactor> {
    geom.validate()?;
    let coarse = solve_laplace(geom, 1, opts)?;
    let fine = solve_laplace(geom, 2, opts)?;
    let zc = coarse.zeta();
    let zf = fine.zeta();
    Ok(GeometricFactor {
        zeta: (4.0 * zf - zc) / 3.0,
        zeta_coarse: zc,
        zeta_fine: zf,
        max_residual: coarse.residual.max(fine.residual),
        iterations: coarse.iterations + fine.iterations,
    })
}

/// Discrete potential on the tensor grid, unit voltage between the strips.
#[derive(Debug, Clone)]
pub struct LaplaceSolution {
    pub z: Vec<f64>,
    pub y: Vec<f64>,
    /// Row-major in `y`: `phi[j * z.len() + i]`.
    pub phi: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    geom: ElectrodeGeometry,
    ion: (usize, usize),
}

impl LaplaceSolution {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.phi[j * self.z.len() + i]
    }

    /// Prescribed Dirichlet value at boundary node `(i, j)`.
    pub fn boundary_value(&self, i: usize, j: usize) -> Option<f64> {
        let (nz, ny) = (self.z.len(), self.y.len());
        if j == 0 {
            Some(plane_potential(&self.geom, self.z[i]))
        } else if i == 0 || i == nz - 1 || j == ny - 1 {
            Some(0.0)
        } else {
            None
        }
    }

    /// Largest deviation from the Dirichlet data over all boundary nodes.
    pub fn boundary_error(&self) -> f64 {
        let (nz, ny) = (self.z.len(), self.y.len());
        let mut err: f64 = 0.0;
        for j in 0..ny {
            for i in 0..nz {
                if let Some(v) = self.boundary_value(i, j) {
                    err = err.max((self.at(i, j) - v).abs());
                }
            }
        }
        err
    }

    /// `E_z h / V` at the ion node.
    pub fn zeta(&self) -> f64 {
        let (i, j) = self.ion;
        let hw = self.z[i] - self.z[i - 1];
        let he = self.z[i + 1] - self.z[i];
        let dphi = -he / (hw * (hw + he)) * self.at(i - 1, j)
            + (he - hw) / (hw * he) * self.at(i, j)
            + hw / (he * (hw + he)) * self.at(i + 1, j);
        -dphi * self.geom.ion_height
    }
}

fn plane_potential(geom: &ElectrodeGeometry, z: f64) -> f64 {
    let inner = geom.gap / 2.0;
    let outer = inner + geom.island_side;
    let a = z.abs();
    let tol = 1e-9 * geom.extent();
    let magnitude = if (a - inner).abs() < tol || (a - outer).abs() < tol {
        0.25
    } else if a > inner && a < outer {
        0.5
    } else {
        0.0
    };
    if z < 0.0 {
        magnitude
    } else {
        -magnitude
    }
}

#[derive(Clone, Copy)]
enum Spacing {
    Uniform,
    /// Fine end at the segment start, `β = n ln r` on the coarse grid.
    GradedFromStart(f64),
    GradedFromEnd(f64),
}

struct Segment {
    start: f64,
    end: f64,
    cells: usize,
    spacing: Spacing,
}

impl Segment {
    fn uniform(start: f64, end: f64, dx: f64) -> Self {
        let cells = (((end - start) / dx).round() as usize).max(2);
        Self { start, end, cells, spacing: Spacing::Uniform }
    }

    fn graded(start: f64, end: f64, dx: f64, growth: f64, fine_at_start: bool) -> Self {
        let len = end - start;
        let cells = ((1.0 + len * (growth - 1.0) / dx).ln() / growth.ln()).ceil().max(2.0) as usize;
        let beta = cells as f64 * growth.ln();
        let spacing = if fine_at_start { Spacing::GradedFromStart(beta) } else { Spacing::GradedFromEnd(beta) };
        Self { start, end, cells, spacing }
    }

    fn map(&self, u: f64) -> f64 {
        let f = |beta: f64, u: f64| (beta * u).exp_m1() / beta.exp_m1();
        let frac = match self.spacing {
            Spacing::Uniform => u,
            Spacing::GradedFromStart(beta) => f(beta, u),
            Spacing::GradedFromEnd(beta) => 1.0 - f(beta, 1.0 - u),
        };
        self.start + (self.end - self.start) * frac
    }
}

fn assemble(segments: &[Segment], refine: usize) -> Vec<f64> {
    let mut nodes = vec![segments[0].start];
    for seg in segments {
        let n = seg.cells * refine;
        for k in 1..n {
            nodes.push(seg.map(k as f64 / n as f64));
        }
        nodes.push(seg.end);
    }
    nodes
}

fn axis_index(nodes: &[f64], value: f64) -> usize {
    nodes
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - value).abs().total_cmp(&(b.1 - value).abs()))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// Solves the cross-section at `refine` times the coarse resolution.
pub fn solve_laplace(geom: &ElectrodeGeometry, refine: usize, opts: &SolverOptions) -> Result<LaplaceSolution> {
    geom.validate()?;
    if refine == 0 {
        return Err(Error::InvalidParameter { name: "refine", reason: "must be >= 1".into() });
    }
    let extent = geom.extent();
    let dx = extent / geom.resolution as f64;
    let half_w = opts.box_width * extent / 2.0;
    let height = opts.box_height * extent;
    let inner = geom.gap / 2.0;
    let outer = inner + geom.island_side;
    if !(half_w > outer + dx) || !(height > geom.ion_height + dx) {
        return Err(Error::InvalidParameter { name: "box", reason: "box does not enclose the electrodes and ion".into() });
    }
    let z_segments = [
        Segment::graded(-half_w, -outer, dx, opts.growth, false),
        Segment::uniform(-outer, -inner, dx),
        Segment::uniform(-inner, 0.0, dx),
        Segment::uniform(0.0, inner, dx),
        Segment::uniform(inner, outer, dx),
        Segment::graded(outer, half_w, dx, opts.growth, true),
    ];
    let y_segments = [
        Segment::uniform(0.0, geom.ion_height, dx),
        Segment::graded(geom.ion_height, height, dx, opts.growth, true),
    ];
    let z = assemble(&z_segments, refine);
    let y = assemble(&y_segments, refine);
    let (nz, ny) = (z.len(), y.len());

    let mut phi = vec![0.0; nz * ny];
    for i in 0..nz {
        phi[i] = plane_potential(geom, z[i]);
    }

    // Five-point weights on the non-uniform grid, normalised by the diagonal.
    let mut weights = vec![[0.0f64; 4]; nz * ny];
    for j in 1..ny - 1 {
        let (hs, hn) = (y[j] - y[j - 1], y[j + 1] - y[j]);
        for i in 1..nz - 1 {
            let (hw, he) = (z[i] - z[i - 1], z[i + 1] - z[i]);
            let aw = 2.0 / (hw * (hw + he));
            let ae = 2.0 / (he * (hw + he));
            let a_s = 2.0 / (hs * (hs + hn));
            let an = 2.0 / (hn * (hs + hn));
            let ap = aw + ae + a_s + an;
            weights[j * nz + i] = [aw / ap, ae / ap, a_s / ap, an / ap];
        }
    }

    let n_max = nz.max(ny) as f64;
    let omega = 2.0 / (1.0 + (std::f64::consts::PI / n_max).sin());
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < opts.max_iterations {
        iterations += 1;
        let mut max_r: f64 = 0.0;
        for j in 1..ny - 1 {
            for i in 1..nz - 1 {
                let k = j * nz + i;
                let [w, e, s, n] = weights[k];
                let r = w * phi[k - 1] + e * phi[k + 1] + s * phi[k - nz] + n * phi[k + nz] - phi[k];
                max_r = max_r.max(r.abs());
                phi[k] += omega * r;
            }
        }
        residual = max_r;
        if max_r < opts.tolerance {
            break;
        }
    }
    if !(residual < opts.tolerance) {
        return Err(Error::NonConvergence {
            what: "laplace relaxation",
            detail: format!("residual {residual:e} after {iterations} iterations"),
        });
    }
    let ion = (axis_index(&z, 0.0), axis_index(&y, geom.ion_height));
    Ok(LaplaceSolution { z, y, phi, residual, iterations, geom: *geom, ion })
}

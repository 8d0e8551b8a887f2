// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered list of subsystems making up a composite Hilbert space.
///
/// Index ordering is row-major: the first subsystem is the most significant
/// digit of a composite basis index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeLayout {
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl ModeLayout {
    pub fn new<S: Into<String>>(slots: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut dims = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        for (label, dim) in slots {
            let label = label.into();
            if dim == 0 {
                return Err(Error::InvalidDimension { dim, reason: "subsystem dimension must be >= 1" });
            }
            if labels.contains(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            labels.push(label);
            dims.push(dim);
        }
        if dims.is_empty() {
            return Err(Error::InvalidDimension { dim: 0, reason: "layout needs at least one subsystem" });
        }
        Ok(Self { dims, labels })
    }

    /// A single subsystem.
    pub fn single(label: &str, dim: usize) -> Result<Self> {
        Self::new([(label, dim)])
    }

    /// `spin ⊗ lc ⊗ motion`, the layout used by most protocols.
    pub fn spin_lc_motion(lc: usize, motion: usize) -> Result<Self> {
        Self::new([("spin", 2), ("lc", lc), ("motion", motion)])
    }

    /// `lc ⊗ motion`.
    pub fn lc_motion(lc: usize, motion: usize) -> Result<Self> {
        Self::new([("lc", lc), ("motion", motion)])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn slot(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::LabelNotFound(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.dims[self.slot(label)?])
    }

    /// Digits of a composite index, one per subsystem.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (k, &d) in self.dims.iter().enumerate().rev() {
            out[k] = index % d;
            index /= d;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&n, &d)| acc * d + n)
    }

    /// Sub-layout made of the named slots, in this layout's order.
    pub fn sub_layout(&self, labels: &[&str]) -> Result<Self> {
        for l in labels {
            self.slot(l)?;
        }
        Self::new(
            self.labels
                .iter()
                .zip(&self.dims)
                .filter(|(l, _)| labels.contains(&l.as_str()))
                .map(|(l, &d)| (l.clone(), d)),
        )
    }
}

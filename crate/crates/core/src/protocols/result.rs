// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dynamics::ObservableSeries;

/// Shift of the headline figure when every truncation is doubled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationConvergence {
    pub dims: Vec<usize>,
    pub doubled_dims: Vec<usize>,
    pub value: f64,
    pub doubled_value: f64,
}

impl TruncationConvergence {
    pub fn delta(&self) -> f64 {
        (self.doubled_value - self.value).abs()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ProtocolResult {
    pub name: String,
    pub fidelity: Option<f64>,
    /// Named scalar outputs, sorted by key.
    pub figures: BTreeMap<String, f64>,
    pub times: Vec<f64>,
    pub series: Vec<ObservableSeries>,
    pub convergence: Option<TruncationConvergence>,
    pub warnings: Vec<String>,
}

impl ProtocolResult {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), ..Self::default() }
    }

    pub fn figure(mut self, key: &str, value: f64) -> Self {
        self.figures.insert(key.to_string(), value);
        self
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.figures.get(key).copied()
    }

    pub fn infidelity(&self) -> Option<f64> {
        self.fidelity.map(|f| 1.0 - f)
    }
}

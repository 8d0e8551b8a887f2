// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::evolve::CollapseOp;
use crate::error::{Error, Result};
use crate::qalgebra::{annihilation, embed, ModeLayout, QOperator};

/// Dissipator structure for a heating rate `γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum HeatingModel {
    /// `b` and `b†` at rate `γ/2` each.
    #[default]
    InfiniteTemperature,
    /// `b†` at rate `γ`.
    AbsorptionOnly,
}

/// Annihilation operator of `label`, to be paired with a decay rate.
pub fn decay_collapse_op(layout: &ModeLayout, label: &str) -> Result<QOperator> {
    embed(&annihilation(layout.dim_of(label)?)?, layout, label)
}

pub fn heating_collapse_ops(layout: &ModeLayout, label: &str, gamma: f64, model: HeatingModel) -> Result<Vec<CollapseOp>> {
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter { name: "gamma_heat", reason: format!("must be finite and >= 0, got {gamma}") });
    }
    let b = decay_collapse_op(layout, label)?;
    Ok(match model {
        HeatingModel::InfiniteTemperature => vec![
            CollapseOp { operator: b.dagger(), rate: gamma / 2.0 },
            CollapseOp { operator: b, rate: gamma / 2.0 },
        ],
        HeatingModel::AbsorptionOnly => vec![CollapseOp { operator: b.dagger(), rate: gamma }],
    })
}

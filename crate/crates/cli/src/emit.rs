// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Result files. Numbers are written with the shortest representation that
//! round-trips, so identical runs give identical bytes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use ionlc_core::protocols::TruncationConvergence;
use serde::{Deserialize, Serialize};

use crate::config::{Mode, RunConfig};
use crate::error::{CliError, Result};

pub const SERIES_FILE: &str = "series.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const SWEEP_FILE: &str = "sweep.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ChecksFailed,
    NotConverged,
    NumericalFailure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mode: Mode,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    pub figures: BTreeMap<String, f64>,
    pub convergence: Option<TruncationConvergence>,
    pub convergence_delta: Option<f64>,
    pub checks: Vec<CheckOutcome>,
    pub warnings: Vec<String>,
    pub config: RunConfig,
}

impl Summary {
    pub fn new(mode: Mode, config: &RunConfig) -> Self {
        Self {
            mode,
            status: Status::Ok,
            diagnostic: None,
            figures: BTreeMap::new(),
            convergence: None,
            convergence_delta: None,
            checks: Vec::new(),
            warnings: Vec::new(),
            config: config.clone(),
        }
    }
}

/// Column-major table with a header row; cells are pre-formatted.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<(String, Vec<String>)>,
}

impl Table {
    pub fn column(mut self, name: impl Into<String>, values: Vec<f64>) -> Self {
        self.columns.push((name.into(), values.iter().map(|v| format!("{v:?}")).collect()));
        self
    }

    pub fn integer_column(mut self, name: impl Into<String>, values: Vec<u64>) -> Self {
        self.columns.push((name.into(), values.iter().map(u64::to_string).collect()));
        self
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.1.len())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.0.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for r in 0..self.rows() {
            let row: Vec<&str> = self.columns.iter().map(|(_, v)| v.get(r).map_or("", String::as_str)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.into(), source })
}

fn write(path: PathBuf, text: &str) -> Result<PathBuf> {
    std::fs::write(&path, text).map_err(|source| CliError::Write { path: path.clone(), source })?;
    Ok(path)
}

pub fn write_table(dir: &Path, name: &str, table: &Table) -> Result<PathBuf> {
    write(dir.join(name), &table.to_csv())
}

pub fn write_summary(dir: &Path, summary: &Summary) -> Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(summary).expect("summary serializes");
    text.push('\n');
    write(dir.join(SUMMARY_FILE), &text)
}

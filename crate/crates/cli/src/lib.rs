// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Config-driven runs of the ionlc simulations with CSV and JSON output.

pub mod checks;
pub mod config;
pub mod emit;
pub mod error;
pub mod run;

pub use config::{Mode, RunConfig};
pub use error::{CliError, Result, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION};
pub use run::{execute, Outcome, RunOptions};

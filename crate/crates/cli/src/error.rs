// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read config {path}: {source}")]
    ReadConfig { path: PathBuf, source: std::io::Error },

    #[error("config: {0}")]
    Parse(String),

    #[error("config: {0}")]
    Validation(String),

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] ionlc_core::Error),

    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use ionlc_core::Error as E;
        match self {
            CliError::ReadConfig { .. } | CliError::Parse(_) | CliError::Validation(_) | CliError::Write { .. } => {
                EXIT_VALIDATION
            }
            CliError::Core(E::NonPositive { .. } | E::InvalidParameter { .. } | E::InvalidDimension { .. }) => EXIT_VALIDATION,
            CliError::Core(_) | CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ionlc_cli::{execute, Mode, RunConfig, RunOptions};

#[derive(Parser)]
#[command(name = "ionlc", version, about = "Ion–LC parametric coupling simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (overrides `output.dir`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Sweep worker count (overrides `sweep.workers`).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Include the ω_i/ω_LC = 1e−3 spot check in `check`.
    #[arg(long, global = true)]
    expensive: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Device numbers from the SI parameters.
    Params,
    /// Two-mode free evolution with a population time series.
    Simulate,
    /// One named protocol with a truncation-convergence rerun.
    Protocol,
    /// Parallel sweep of one parameter.
    Sweep,
    /// Invariant suite.
    Check,
}

impl From<Command> for Mode {
    fn from(c: Command) -> Self {
        match c {
            Command::Params => Mode::Params,
            Command::Simulate => Mode::Simulate,
            Command::Protocol => Mode::Protocol,
            Command::Sweep => Mode::Sweep,
            Command::Check => Mode::Check,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path),
        None => Ok(RunConfig::default()),
    };
    let opts = RunOptions { out: cli.out.clone(), workers: cli.workers, expensive: cli.expensive };
    match cfg.and_then(|cfg| execute(cli.command.into(), &cfg, &opts)) {
        Ok(outcome) => {
            let s = &outcome.summary;
            for (k, v) in &s.figures {
                println!("{k} = {v:e}");
            }
            for c in &s.checks {
                println!("[{}] {} {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
            }
            if let Some(d) = s.convergence_delta {
                println!("truncation shift = {d:e}");
            }
            for w in &s.warnings {
                eprintln!("warning: {w}");
            }
            if let Some(diag) = &s.diagnostic {
                eprintln!("error: {diag}");
            }
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::TAU;
use std::path::PathBuf;

use ionlc_core::device::constants::ELEMENTARY_CHARGE;
use ionlc_core::device::{geometric_factor, heating_rate_scaled, DeviceParams};
use ionlc_core::dynamics::{evolve_pure, EvolutionSpec};
use ionlc_core::hamiltonians::{interaction_frame_hamiltonian, lab_frame_hamiltonian, rwa_hamiltonian, KappaForm, LC, MOTION};
use ionlc_core::protocols::runs::{budget_run, jc_cnot_run, metrology_run, ms_run, phase_gate_run, swap_run};
use ionlc_core::protocols::{
    full_budget_run, heating_point, log_log_slope, loops_for_alpha, BudgetOptions, BudgetRates, HeatingScanOptions,
    ProtocolResult, TruncationConvergence,
};
use ionlc_core::qalgebra::{embed, number, ModeLayout, QOperator, QState};
use ionlc_core::C64;
use rayon::prelude::*;

use crate::checks::invariant_suite;
use crate::config::{Mode, ProtocolName, RunConfig, SimFrame, SweepParameter, SweepSection};
use crate::emit::{self, Status, Summary, Table, SERIES_FILE, SWEEP_FILE};
use crate::error::{CliError, Result, EXIT_NUMERICAL, EXIT_OK};

/// Largest tolerated shift of a headline figure under doubled truncation.
pub const CONVERGENCE_LIMIT: f64 = 1e-3;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides `output.dir`.
    pub out: Option<PathBuf>,
    /// Overrides `sweep.workers`.
    pub workers: Option<usize>,
    pub expensive: bool,
}

#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub summary: Summary,
    pub out_dir: PathBuf,
    pub files: Vec<PathBuf>,
}

#[derive(Default)]
struct Artifacts {
    figures: Vec<(String, f64)>,
    convergence: Option<TruncationConvergence>,
    checks: Vec<emit::CheckOutcome>,
    warnings: Vec<String>,
    tables: Vec<(&'static str, Table)>,
}

impl Artifacts {
    fn figure(&mut self, name: &str, value: f64) {
        self.figures.push((name.into(), value));
    }
}

/// Validates, runs `mode`, and writes `summary.json` plus any tables.
/// Validation problems come back as `Err`; numerical failures still write
/// a summary and report exit code 3.
pub fn execute(mode: Mode, cfg: &RunConfig, opts: &RunOptions) -> Result<Outcome> {
    cfg.validate()?;
    if let Some(m) = cfg.mode {
        if m != mode {
            return Err(CliError::Validation(format!("config declares mode `{}` but `{}` was requested", m.as_str(), mode.as_str())));
        }
    }
    if let Some(w) = opts.workers {
        if w == 0 {
            return Err(CliError::Validation("--workers must be at least 1".into()));
        }
    }
    if mode == Mode::Sweep && cfg.sweep.is_none() {
        return Err(CliError::Validation("sweep mode needs a [sweep] section".into()));
    }
    // Surface parameter errors before any work.
    cfg.model.params()?;
    cfg.device.inputs().derive()?;

    let out_dir = opts.out.clone().unwrap_or_else(|| PathBuf::from(&cfg.output.dir));
    emit::ensure_dir(&out_dir)?;
    let mut summary = Summary::new(mode, cfg);

    let result = match mode {
        Mode::Params => params(cfg),
        Mode::Simulate => simulate(cfg),
        Mode::Protocol => protocol(cfg),
        Mode::Sweep => sweep(cfg, opts),
        Mode::Check => check(cfg, opts),
    };
    let mut files = Vec::new();
    let exit_code = match result {
        Ok(art) => {
            summary.figures = art.figures.into_iter().collect();
            summary.convergence_delta = art.convergence.as_ref().map(TruncationConvergence::delta);
            summary.convergence = art.convergence;
            summary.checks = art.checks;
            summary.warnings = art.warnings;
            for (name, table) in &art.tables {
                files.push(emit::write_table(&out_dir, name, table)?);
            }
            if summary.convergence_delta.is_some_and(|d| !(d <= CONVERGENCE_LIMIT)) {
                summary.status = Status::NotConverged;
                summary.diagnostic = Some(format!(
                    "doubled-truncation shift {:e} exceeds {CONVERGENCE_LIMIT:e}",
                    summary.convergence_delta.unwrap_or(f64::NAN)
                ));
            } else if summary.checks.iter().any(|c| !c.pass) {
                summary.status = Status::ChecksFailed;
                let failed: Vec<&str> = summary.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
                summary.diagnostic = Some(format!("failed checks: {}", failed.join("; ")));
            }
            if summary.status == Status::Ok {
                EXIT_OK
            } else {
                EXIT_NUMERICAL
            }
        }
        Err(e) if e.exit_code() == EXIT_NUMERICAL => {
            summary.status = Status::NumericalFailure;
            summary.diagnostic = Some(e.to_string());
            EXIT_NUMERICAL
        }
        Err(e) => return Err(e),
    };
    files.push(emit::write_summary(&out_dir, &summary)?);
    Ok(Outcome { exit_code, summary, out_dir, files })
}

fn params(cfg: &RunConfig) -> Result<Artifacts> {
    let d = cfg.device.inputs().derive()?;
    let zeta = geometric_factor(&cfg.device.geometry()?)?;
    let heating = heating_rate_scaled(cfg.device.heating_reference_per_s, cfg.device.heating_reference_distance_m, d.ion_height)?;
    let g = d.effective_coupling();
    let mut a = Artifacts::default();
    a.figure("omega_lc_rad_s", d.omega_lc);
    a.figure("f_lc_hz", d.omega_lc / TAU);
    a.figure("nu_rad_s", d.nu);
    a.figure("detuning_rad_s", d.detuning());
    a.figure("z0_m", d.z0);
    a.figure("q0_c", d.q0);
    a.figure("q0_e", d.q0 / ELEMENTARY_CHARGE);
    a.figure("impedance_ohm", d.impedance);
    a.figure("g0_rad_s", d.g0);
    a.figure("g0_hz", d.g0 / TAU);
    a.figure("g_rad_s", g);
    a.figure("g_hz", g / TAU);
    a.figure("swap_time_s", std::f64::consts::PI / (2.0 * g));
    a.figure("zeta", d.zeta);
    a.figure("zeta_solved", zeta.zeta);
    a.figure("zeta_grid_change", zeta.grid_change());
    a.figure("heating_rate_per_s", heating);
    a.checks.push(emit::CheckOutcome {
        name: "ζ grid change < 0.01".into(),
        pass: zeta.grid_change() < 0.01,
        detail: format!("{:.2e}", zeta.grid_change()),
    });
    Ok(a)
}

fn number_on(layout: &ModeLayout, label: &str) -> Result<QOperator> {
    Ok(embed(&number(layout.dim_of(label)?)?, layout, label)?)
}

struct SimRun {
    times: Vec<f64>,
    p_lc: Vec<f64>,
    p_motion: Vec<f64>,
    norms: Vec<f64>,
    conservation: f64,
}

fn simulate_at(cfg: &RunConfig, lc: usize, motion: usize) -> Result<SimRun> {
    let p = cfg.model.params()?;
    let s = &cfg.simulate;
    let layout = ModeLayout::lc_motion(lc, motion)?;
    let h = match s.frame {
        SimFrame::Rwa => rwa_hamiltonian(p.effective_coupling(), p.detuning(), &layout)?,
        SimFrame::Interaction => interaction_frame_hamiltonian(&p, &layout, KappaForm::Exact)?,
        SimFrame::Lab => lab_frame_hamiltonian(&p, &layout)?,
    };
    let spec = EvolutionSpec::new(h, s.duration_swaps * p.swap_time())
        .tolerance(cfg.integrator.tolerance)
        .uniform_samples(s.samples)
        .observe("P_lc", number_on(&layout, LC)?)
        .observe("P_motion", number_on(&layout, MOTION)?);
    let r = evolve_pure(&spec, &QState::basis(&layout, &s.initial)?)?;
    let series = |name: &str| r.series(name).map(<[f64]>::to_vec).unwrap_or_default();
    Ok(SimRun { p_lc: series("P_lc"), p_motion: series("P_motion"), times: r.times.clone(), norms: r.norms.clone(), conservation: r.conservation_error })
}

fn simulate(cfg: &RunConfig) -> Result<Artifacts> {
    let t = cfg.truncation;
    let run = simulate_at(cfg, t.lc, t.motion)?;
    let doubled = simulate_at(cfg, 2 * t.lc, 2 * t.motion)?;
    let last = |v: &[f64]| v.last().copied().unwrap_or(f64::NAN);
    let mut a = Artifacts::default();
    a.figure("final_P_lc", last(&run.p_lc));
    a.figure("final_P_motion", last(&run.p_motion));
    a.figure("duration", last(&run.times));
    a.figure("norm_error", run.conservation);
    a.convergence = Some(TruncationConvergence {
        dims: vec![t.lc, t.motion],
        doubled_dims: vec![2 * t.lc, 2 * t.motion],
        value: last(&run.p_motion),
        doubled_value: last(&doubled.p_motion),
    });
    a.checks.push(emit::CheckOutcome {
        name: "norm preserved within 1e−8".into(),
        pass: run.conservation < 1e-8,
        detail: format!("{:.2e}", run.conservation),
    });
    a.tables.push((
        SERIES_FILE,
        Table::default()
            .column("time", run.times)
            .column("P_lc", run.p_lc)
            .column("P_motion", run.p_motion)
            .column("norm", run.norms),
    ));
    Ok(a)
}

fn device(cfg: &RunConfig) -> Result<DeviceParams> {
    Ok(cfg.device.inputs().derive()?)
}

fn protocol(cfg: &RunConfig) -> Result<Artifacts> {
    let p = cfg.model.params()?;
    let pr = &cfg.protocol;
    let dims = [cfg.truncation.lc, cfg.truncation.motion];
    let tol = cfg.integrator.tolerance;
    let (result, axis): (ProtocolResult, &str) = match pr.name {
        ProtocolName::Swap => (swap_run(&p, dims, tol, pr.samples)?, "time"),
        ProtocolName::JcCnot => (jc_cnot_run(&p, dims, tol)?, "time"),
        ProtocolName::Ms => (ms_run(&p, TAU * pr.delta_hz, pr.loops, dims, tol)?, "time"),
        ProtocolName::PhaseGate => (phase_gate_run(C64::new(pr.alpha, 0.0), dims[0])?, "time"),
        ProtocolName::Metrology => (metrology_run(pr.cat_alpha, pr.probe, dims[0], &device(cfg)?, pr.mean_photons)?, "probe"),
        ProtocolName::Budget => {
            let d = device(cfg)?;
            let opts = BudgetOptions { lc_dim: dims[0], motion_dim: dims[1], tolerance: tol, ..BudgetOptions::default() };
            (budget_run(&d, BudgetRates::from_device(&d), &opts)?, "time")
        }
    };
    let mut a = Artifacts::default();
    for (k, v) in &result.figures {
        a.figure(k, *v);
    }
    if let Some(f) = result.fidelity {
        a.figure("fidelity", f);
    }
    a.convergence = result.convergence.clone();
    a.warnings = result.warnings.clone();
    if !result.series.is_empty() {
        let mut table = Table::default().column(axis, result.times.clone());
        for s in &result.series {
            table = table.column(s.name.clone(), s.values.clone());
        }
        a.tables.push((SERIES_FILE, table));
    }
    Ok(a)
}

struct SweepRow {
    value: f64,
    infidelity: f64,
    n: Option<u32>,
    alpha: Option<f64>,
}

fn sweep_point(cfg: &RunConfig, sw: &SweepSection, value: f64, dims: [usize; 2]) -> Result<SweepRow> {
    let tol = cfg.integrator.tolerance;
    match sw.parameter {
        SweepParameter::DeltaHz => {
            let p = cfg.model.params()?;
            let delta = TAU * value;
            let n = loops_for_alpha(&p, delta, sw.target_alpha);
            let opts = HeatingScanOptions { lc_dim: dims[0], motion_dim: dims[1], tolerance: tol, ..HeatingScanOptions::default() };
            let h = heating_point(&p, delta, n, sw.heating_rate, &opts)?;
            Ok(SweepRow { value, infidelity: h.infidelity, n: Some(h.n), alpha: Some(h.alpha) })
        }
        SweepParameter::KappaLcPerS | SweepParameter::GammaHeatPerS => {
            let d = device(cfg)?;
            let mut rates = BudgetRates::from_device(&d);
            if sw.parameter == SweepParameter::KappaLcPerS {
                rates.kappa_lc = value;
            } else {
                rates.gamma_heat = value;
            }
            let opts = BudgetOptions { lc_dim: dims[0], motion_dim: dims[1], tolerance: tol, ..BudgetOptions::default() };
            let r = full_budget_run(&d, rates, &opts)?;
            let infidelity = r.infidelity().ok_or_else(|| CliError::Numerical("budget run reported no fidelity".into()))?;
            Ok(SweepRow { value, infidelity, n: None, alpha: None })
        }
    }
}

fn sweep(cfg: &RunConfig, opts: &RunOptions) -> Result<Artifacts> {
    let sw = cfg.sweep.as_ref().ok_or_else(|| CliError::Validation("sweep mode needs a [sweep] section".into()))?;
    let workers = opts.workers.unwrap_or(sw.workers);
    let dims = [cfg.truncation.lc, cfg.truncation.motion];
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Numerical(format!("cannot start {workers} workers: {e}")))?;
    // Indexed parallel collect keeps sweep order.
    let rows: Vec<Result<SweepRow>> = pool.install(|| sw.values.par_iter().map(|&v| sweep_point(cfg, sw, v, dims)).collect());
    let rows: Vec<SweepRow> = rows.into_iter().collect::<Result<_>>()?;
    let doubled = sweep_point(cfg, sw, sw.values[0], [2 * dims[0], 2 * dims[1]])?;

    let mut a = Artifacts::default();
    a.figure("points", rows.len() as f64);
    a.figure("workers", workers as f64);
    a.convergence = Some(TruncationConvergence {
        dims: dims.to_vec(),
        doubled_dims: vec![2 * dims[0], 2 * dims[1]],
        value: rows[0].infidelity,
        doubled_value: doubled.infidelity,
    });
    let xs: Vec<f64> = rows.iter().map(|r| r.value).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.infidelity).collect();
    if xs.len() >= 2 && xs.iter().chain(&ys).all(|v| *v > 0.0) {
        a.figure("log_log_slope", log_log_slope(&xs, &ys));
    }
    let mut table = Table::default().column(sw.parameter.as_str(), xs).column("infidelity", ys);
    if sw.parameter == SweepParameter::DeltaHz {
        table = table
            .integer_column("n", rows.iter().map(|r| u64::from(r.n.unwrap_or(0))).collect())
            .column("alpha", rows.iter().map(|r| r.alpha.unwrap_or(f64::NAN)).collect());
    }
    a.tables.push((SWEEP_FILE, table));
    Ok(a)
}

fn check(cfg: &RunConfig, opts: &RunOptions) -> Result<Artifacts> {
    let p = cfg.model.params()?;
    let mut a = Artifacts::default();
    a.checks = invariant_suite(&p, cfg.integrator.tolerance, opts.expensive)?;
    let swap = swap_run(&p, [cfg.truncation.lc, cfg.truncation.motion], cfg.integrator.tolerance, 2)?;
    a.convergence = swap.convergence;
    a.figure("checks_passed", a.checks.iter().filter(|c| c.pass).count() as f64);
    a.figure("checks_total", a.checks.len() as f64);
    Ok(a)
}

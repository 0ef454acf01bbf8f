//! Command-line runner: verification suites and scenario runs driven by a flat TOML config.

mod config;
mod suites;

pub use config::{FaultInjection, InitialLevel, RunConfig};
pub use suites::{random_rapidities, RelationCheck};

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::dynamics::{
    self, collapse_revival_scan, cutoff_convergence, evolve_with, product_state, relativistic_comparison,
    rest_frame_diagnostics, rwa_validity, uniform_grid, Propagator,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{self, uncoupled_spectrum, HamiltonianKind, ModelParams};
use crate::linalg;
use crate::Complex64;

pub const SCHEMA_VERSION: u32 = 1;
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckAlgebra,
    Spectrum,
    Evolve,
    ScanRevival,
    ScanRwa,
    CompareRelativistic,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckAlgebra => "check-algebra",
            Command::Spectrum => "spectrum",
            Command::Evolve => "evolve",
            Command::ScanRevival => "scan-revival",
            Command::ScanRwa => "scan-rwa",
            Command::CompareRelativistic => "compare-relativistic",
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "relrabi", version, about = "Relativistic two-level atom in a single-mode field")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// TOML file with flat keys; defaults are used for missing keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory for CSV and JSON artifacts.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Seed for randomized property checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Multiplies every tolerance.
    #[arg(long, default_value_t = 1.0)]
    pub tolerance_scale: f64,
}

/// Result of one run: verdict, written files and a human summary.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub files: Vec<PathBuf>,
    pub summary: Vec<String>,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    schema_version: u32,
    command: Command,
    version: &'static str,
    seed: u64,
    tolerance_scale: f64,
    passed: bool,
    config: &'a RunConfig,
    params: &'a ModelParams,
    result: T,
}

fn num(v: f64) -> String {
    format!("{:?}", v + 0.0)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

struct Ctx<'a> {
    args: &'a Args,
    cfg: &'a RunConfig,
    params: ModelParams,
}

impl Ctx<'_> {
    fn emit<T: Serialize>(&self, passed: bool, csv: Option<String>, result: T, summary: Vec<String>) -> Result<Outcome> {
        let name = self.args.command.name();
        let report = Report {
            schema_version: SCHEMA_VERSION,
            command: self.args.command,
            version: env!("CARGO_PKG_VERSION"),
            seed: self.args.seed,
            tolerance_scale: self.args.tolerance_scale,
            passed,
            config: self.cfg,
            params: &self.params,
            result,
        };
        let mut files = Vec::new();
        if let Some(csv) = csv {
            files.push(write_file(&self.args.out, &format!("{name}.csv"), &csv)?);
        }
        let json = serde_json::to_string_pretty(&report)? + "\n";
        files.push(write_file(&self.args.out, &format!("{name}.json"), &json)?);
        Ok(Outcome { passed, files, summary })
    }

    fn t_max(&self) -> f64 {
        let p = &self.params;
        self.cfg.t_max.unwrap_or_else(|| {
            let g = p.coupling();
            if g > 0.0 {
                self.cfg.periods * std::f64::consts::PI * p.hbar / g
            } else {
                self.cfg.periods * 2.0 * std::f64::consts::PI / p.mode_frequency
            }
        })
    }
}

/// Parse `argv` and run; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&args) {
        Ok(outcome) => {
            for line in &outcome.summary {
                println!("{line}");
            }
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

pub fn run(args: &Args) -> Result<Outcome> {
    if !(args.tolerance_scale > 0.0) || !args.tolerance_scale.is_finite() {
        return Err(Error::Config(format!("--tolerance-scale must be positive, got {}", args.tolerance_scale)));
    }
    let cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let ctx = Ctx { args, cfg: &cfg, params: cfg.params()? };
    match args.command {
        Command::CheckAlgebra => check_algebra(&ctx),
        Command::Spectrum => spectrum(&ctx),
        Command::Evolve => evolve(&ctx),
        Command::ScanRevival => scan_revival(&ctx),
        Command::ScanRwa => scan_rwa(&ctx),
        Command::CompareRelativistic => compare_relativistic(&ctx),
    }
}

/// Run every algebraic suite and collect one record per relation.
pub fn run_check_algebra(cfg: &RunConfig, seed: u64, tolerance_scale: f64) -> Result<Vec<RelationCheck>> {
    let mut checks = suites::grassmann_suite(cfg, seed, tolerance_scale)?;
    checks.extend(suites::tetrad_suite(cfg, seed, tolerance_scale)?);
    checks.extend(suites::poincare_suite(cfg, seed, tolerance_scale));
    checks.extend(suites::quantize_suite(cfg, tolerance_scale)?);
    checks.extend(suites::hamiltonian_suite(cfg, tolerance_scale)?);
    Ok(checks)
}

fn check_algebra(ctx: &Ctx) -> Result<Outcome> {
    let checks = run_check_algebra(ctx.cfg, ctx.args.seed, ctx.args.tolerance_scale)?;
    let passed = checks.iter().all(|c| c.passed);
    let summary = checks
        .iter()
        .map(|c| {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            format!("{verdict} [{}] {}: residual {:e} (tol {:e})", c.suite, c.relation, c.residual, c.tolerance)
        })
        .collect();
    ctx.emit(passed, None, &checks, summary)
}

#[derive(Serialize)]
struct SpectrumResult {
    hamiltonian: HamiltonianKind,
    dimension: usize,
    closed_form_max_deviation: Option<f64>,
    cutoff_deviation: f64,
    cutoff_converged: bool,
}

fn spectrum(ctx: &Ctx) -> Result<Outcome> {
    let p = &ctx.params;
    let kind = ctx.cfg.hamiltonian;
    let eig = |q: &ModelParams| -> Result<Vec<f64>> { Ok(linalg::eigvalsh(hamiltonian::build(q, kind)?.h.matrix())) };
    let vals = eig(p)?;
    let closed = if p.dipole == 0.0 { Some(uncoupled_spectrum(p, kind)?) } else { None };
    let bigger = eig(&ModelParams { fock_cutoff: p.fock_cutoff + 5, ..p.clone() })?;
    let low = (vals.len() / 4).clamp(1, 10);
    let cutoff_deviation = vals[..low].iter().zip(&bigger).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    let mut csv = String::from(if closed.is_some() { "index,energy,closed_form,deviation\n" } else { "index,energy\n" });
    let mut worst: f64 = 0.0;
    for (k, e) in vals.iter().enumerate() {
        match &closed {
            Some(cf) => {
                let dev = (e - cf[k]).abs();
                worst = worst.max(dev / cf[k].abs().max(1.0));
                csv.push_str(&format!("{k},{},{},{}\n", num(*e), num(cf[k]), num(dev)));
            }
            None => csv.push_str(&format!("{k},{}\n", num(*e))),
        }
    }
    let closed_form_max_deviation = closed.map(|_| worst);
    let passed = closed_form_max_deviation.is_none_or(|d| d <= ctx.cfg.tol_hamiltonian * ctx.args.tolerance_scale);
    let result = SpectrumResult {
        hamiltonian: kind,
        dimension: vals.len(),
        closed_form_max_deviation,
        cutoff_deviation,
        cutoff_converged: cutoff_deviation <= ctx.cfg.tol_convergence,
    };
    let summary = vec![format!("{} eigenvalues, ground energy {}", vals.len(), num(vals[0]))];
    ctx.emit(passed, Some(csv), result, summary)
}

#[derive(Serialize)]
struct EvolveResult {
    hamiltonian: HamiltonianKind,
    t_max: f64,
    samples: usize,
    cutoff_deviation: f64,
    cutoff_converged: bool,
    max_norm_drift: f64,
    rest_frame_diagnostic: [f64; 3],
    last: dynamics::ObservableRecord,
}

fn evolve(ctx: &Ctx) -> Result<Outcome> {
    let kind = ctx.cfg.hamiltonian;
    let init = ctx.cfg.initial_state();
    let grid = uniform_grid(ctx.t_max(), ctx.cfg.samples);
    let run = |q: &ModelParams| {
        let h = hamiltonian::build(q, kind)?;
        let psi = product_state(q, init.level, init.field)?;
        evolve_with(&Propagator::new(&h)?, q, &psi, &grid)
    };
    let traj = run(&ctx.params)?;
    let cutoff_deviation = cutoff_convergence(&ctx.params, run)?;
    let psi0 = product_state(&ctx.params, init.level, init.field)?;
    let result = EvolveResult {
        hamiltonian: kind,
        t_max: grid[grid.len() - 1],
        samples: grid.len(),
        cutoff_deviation,
        cutoff_converged: cutoff_deviation <= ctx.cfg.tol_convergence,
        max_norm_drift: traj.records.iter().map(|r| (r.norm - 1.0).abs()).fold(0.0, f64::max),
        rest_frame_diagnostic: rest_frame_diagnostics(&psi0, &ctx.params)?,
        last: traj.records[traj.records.len() - 1],
    };
    let summary = vec![format!(
        "{} samples to t = {}, cutoff deviation {:e}",
        grid.len(),
        num(result.t_max),
        cutoff_deviation
    )];
    ctx.emit(true, Some(traj.to_csv()), result, summary)
}

#[derive(Serialize)]
struct RevivalResult {
    amplitude: [f64; 2],
    mean_photons: f64,
    predicted_revival: f64,
    estimated_revival: Option<f64>,
    estimated_collapse: Option<f64>,
    relative_error: Option<f64>,
    cutoff_deviation: f64,
    cutoff_converged: bool,
}

fn scan_revival(ctx: &Ctx) -> Result<Outcome> {
    let [re, im] = ctx.cfg.amplitude.unwrap_or([3.0, 0.0]);
    let alpha = Complex64::new(re, im);
    let p = &ctx.params;
    let g = p.coupling();
    let predicted = 2.0 * std::f64::consts::PI * p.hbar * alpha.norm() / g;
    let t_max = ctx.cfg.t_max.unwrap_or(1.5 * predicted);
    let samples = ctx.cfg.samples.max(4096);
    let scan = collapse_revival_scan(p, alpha, t_max, samples)?;
    let cutoff_deviation = cutoff_convergence(p, |q| Ok(collapse_revival_scan(q, alpha, t_max, samples)?.trajectory))?;
    let mut csv = String::from("t,sigma3,envelope,photons\n");
    for (r, e) in scan.trajectory.records.iter().zip(&scan.envelope) {
        csv.push_str(&format!("{},{},{},{}\n", num(r.t), num(r.sigma3), num(*e), num(r.photons)));
    }
    let relative_error = scan.estimated_revival.map(|t| (t - scan.predicted_revival).abs() / scan.predicted_revival);
    let summary = vec![format!(
        "n = {}, predicted revival {}, estimated {}",
        num(scan.mean_photons),
        num(scan.predicted_revival),
        scan.estimated_revival.map_or("none".into(), num)
    )];
    let result = RevivalResult {
        amplitude: [re, im],
        mean_photons: scan.mean_photons,
        predicted_revival: scan.predicted_revival,
        estimated_revival: scan.estimated_revival,
        estimated_collapse: scan.estimated_collapse,
        relative_error,
        cutoff_deviation,
        cutoff_converged: cutoff_deviation <= ctx.cfg.tol_convergence,
    };
    ctx.emit(true, Some(csv), result, summary)
}

fn scan_rwa(ctx: &Ctx) -> Result<Outcome> {
    let report = rwa_validity(&ctx.params, &ctx.cfg.ratios, ctx.cfg.periods)?;
    let mut csv = String::from("ratio,t_max,max_trace_distance\n");
    let mut summary = Vec::new();
    for pt in &report.points {
        csv.push_str(&format!("{},{},{}\n", num(pt.ratio), num(pt.t_max), num(pt.max_trace_distance)));
        summary.push(format!("g/hw = {}: max trace distance {:e}", num(pt.ratio), pt.max_trace_distance));
    }
    let passed = report.monotone;
    ctx.emit(passed, Some(csv), report, summary)
}

fn compare_relativistic(ctx: &Ctx) -> Result<Outcome> {
    let report = relativistic_comparison(
        &ctx.params,
        &ctx.cfg.c_list,
        ctx.cfg.link,
        ctx.cfg.initial_state(),
        ctx.cfg.periods,
    )?;
    let mut csv = String::from(
        "c,level_splitting,max_sigma3_deviation,max_observable_deviation,relative_spectral_deviation\n",
    );
    let mut summary = Vec::new();
    for pt in &report.points {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            num(pt.c),
            num(pt.level_splitting),
            num(pt.max_sigma3_deviation),
            num(pt.max_observable_deviation),
            num(pt.relative_spectral_deviation)
        ));
        summary.push(format!(
            "c = {}: observable deviation {:e}, spectral deviation {:e}",
            num(pt.c),
            pt.max_observable_deviation,
            pt.relative_spectral_deviation
        ));
    }
    let passed = report.monotone;
    ctx.emit(passed, Some(csv), report, summary)
}

//! Batch runs: a [`RunConfig`] names a command and its parameters, [`run`]
//! dispatches to the library and collects a [`Report`].
//!
//! The `burkholder` binary is a thin flag parser over this module. A config
//! may also be read from JSON; flags given on the command line win.

use crate::constants::{
    cot_constant, davis_d1, p_star, weak_dp, ExponentContext,
};
use crate::convexity::{
    biconcavity_scan, planted_counterexample, quasiconvexity_probe, rank_one_scan, rank_one_scan_with,
    ratio_consistency_scan, DeformationFamily, QuasiconvexityConfig, ScanConfig,
};
use crate::error::{Error, Result};
use crate::functions::{identity_scan, Matrix2};
use crate::lehto::{integral_u_lehto, integral_umin_lehto, lehto_ratio, LehtoParams};
use crate::martingale::haar::haar_paley_fuzz;
use crate::martingale::{near_extremal_search, simulate_pair, transform_fuzz, EnsembleSpec, PairKind, TransformKind};
use crate::multiplier::io::{read_csv, read_field, write_csv, write_field};
use crate::multiplier::{
    apply_symbol, gaussian_floor_scan, operator_ratio_probe, symbol_beurling, symbol_riesz, symbol_second_riesz,
    FrequencyGrid, MultiplierSymbolGrid, ProbeConfig, ProbeFamily,
};
use crate::report::{constants_pretty, constants_table, write_constants_csv, Metadata, Record, Report};
use crate::special::catalan;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Constants,
    Verify,
    Multiplier,
    Lehto,
    Simulate,
    Quasiconvex,
    Probe,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Constants => "constants",
            Command::Verify => "verify",
            Command::Multiplier => "multiplier",
            Command::Lehto => "lehto",
            Command::Simulate => "simulate",
            Command::Quasiconvex => "quasiconvex",
            Command::Probe => "probe",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "constants" => Command::Constants,
            "verify" => Command::Verify,
            "multiplier" => Command::Multiplier,
            "lehto" => Command::Lehto,
            "simulate" => Command::Simulate,
            "quasiconvex" => Command::Quasiconvex,
            "probe" => Command::Probe,
            other => return Err(Error::Config(format!("unknown command `{other}`"))),
        })
    }
}

/// Everything a run needs. Unset fields fall back to per-command defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub p: Vec<f64>,
    pub seed: u64,
    pub blocks: usize,
    pub samples: Option<usize>,
    pub grid: Option<usize>,
    pub box_length: f64,
    pub paths: Option<usize>,
    pub steps: Option<usize>,
    pub tol: Option<f64>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub suite: Option<String>,
    pub symbol: Option<String>,
    pub kind: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: Command::Constants,
            p: Vec::new(),
            seed: 0,
            blocks: 16,
            samples: None,
            grid: None,
            box_length: 1.0,
            paths: None,
            steps: None,
            tol: None,
            input: None,
            output: None,
            json: None,
            suite: None,
            symbol: None,
            kind: None,
        }
    }
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self { command, ..Self::default() }
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Checks ranges and that input files exist.
    pub fn validate(&self) -> Result<()> {
        if let Some(&p) = self.p.iter().find(|&&p| !(p > 1.0 && p.is_finite())) {
            return Err(Error::Config(format!("every p must exceed 1, got {p}")));
        }
        if self.blocks == 0 {
            return Err(Error::Config("blocks must be positive".into()));
        }
        if matches!(self.samples, Some(0)) || matches!(self.paths, Some(0)) || matches!(self.steps, Some(0)) {
            return Err(Error::Config("samples, paths and steps must be positive".into()));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("tolerance {t} must be positive")));
            }
        }
        if !(self.box_length > 0.0 && self.box_length.is_finite()) {
            return Err(Error::Config("box length must be positive".into()));
        }
        if let Some(path) = &self.input {
            if !path.is_file() {
                return Err(Error::Config(format!("input file {} does not exist", path.display())));
            }
        }
        Ok(())
    }

    fn p_list(&self, default: &[f64]) -> Vec<f64> {
        if self.p.is_empty() {
            default.to_vec()
        } else {
            self.p.clone()
        }
    }
}

/// The outcome of [`run`]: the report and the text printed for humans.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: Report,
    pub text: String,
}

impl RunOutcome {
    pub fn exit_status(&self) -> i32 {
        self.report.exit_status()
    }
}

/// Exit status for an error: 2 for configuration and input problems, 1 for
/// numerical failures.
pub fn error_exit_status(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Domain(_) | Error::Shape(_) | Error::Io(_) | Error::Csv(_) | Error::Json(_) | Error::Format(_) => 2,
        _ => 1,
    }
}

/// Runs a command. When `json` is set the report is written there and the
/// metadata next to it as `<name>.meta.json`.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let started = std::time::SystemTime::now();
    let clock = Instant::now();
    let mut report = Report::new(cfg.command.name());
    let mut text = String::new();
    match cfg.command {
        Command::Constants => run_constants(cfg, &mut report, &mut text)?,
        Command::Verify => run_verify(cfg, &mut report)?,
        Command::Multiplier => run_multiplier(cfg, &mut report)?,
        Command::Lehto => run_lehto(cfg, &mut report)?,
        Command::Simulate => run_simulate(cfg, &mut report)?,
        Command::Quasiconvex => run_quasiconvex(cfg, &mut report)?,
        Command::Probe => run_probe(cfg, &mut report)?,
    }
    text.push_str(&report.table());
    if let Some(path) = &cfg.json {
        report.write_json(path)?;
        let meta = Metadata {
            command: cfg.command.name().into(),
            version: env!("CARGO_PKG_VERSION").into(),
            started_unix_seconds: started.duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            elapsed_seconds: clock.elapsed().as_secs_f64(),
            config: serde_json::to_value(cfg)?,
        };
        meta.write(metadata_path(path))?;
    }
    Ok(RunOutcome { report, text })
}

/// `report.json` → `report.meta.json`.
pub fn metadata_path(json: &Path) -> PathBuf {
    let stem = json.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
    json.with_file_name(format!("{stem}.meta.json"))
}

fn run_constants(cfg: &RunConfig, report: &mut Report, text: &mut String) -> Result<()> {
    let ps = cfg.p_list(&[1.5, 2.0, 3.0, 4.0]);
    let rows = constants_table(&ps)?;
    text.push_str(&format!("Davis constant D_1 = π²/(8G) = {:.12}\n", davis_d1()));
    text.push_str(&constants_pretty(&rows));
    text.push('\n');
    if let Some(out) = &cfg.output {
        write_constants_csv(&rows, std::fs::File::create(out)?)?;
    }
    let s = "constants";
    report.push(Record::close(s, "Catalan's constant G", catalan(), 0.915_965_5, 1e-6));
    report.push(Record::close(s, "Davis constant agrees with D_1", weak_dp(1.0)?, davis_d1(), 1e-8));
    for r in &rows {
        report.push(Record::at_most(s, &format!("cot(π/2p*) ≤ p*−1 at p = {}", r.p), r.cot, r.transform + 1e-12));
        report.push(Record::at_least(s, &format!("csc(π/2p*) ≥ cot(π/2p*) at p = {}", r.p), r.csc, r.cot));
        report.push(Record::at_most(s, &format!("Choi bracket ordered at p = {}", r.p), r.choi_low, r.choi_high));
        // The expansion is asymptotic in p; it is checked where it applies.
        if r.p >= 4.0 {
            let inside = r.choi_low <= r.choi_approx && r.choi_approx <= r.choi_high;
            report.push(Record::new(s, &format!("Choi approximation inside bracket at p = {}", r.p), r.choi_approx, r.choi_high, inside));
        }
        if let Some(dp) = r.weak_orthogonal {
            report.push(Record::at_most(
                s,
                &format!("D_p ≤ weak subordinate constant at p = {}", r.p),
                dp,
                r.weak_subordinate * (1.0 + 1e-10),
            ));
        }
    }
    Ok(())
}

const DEFAULT_P: [f64; 6] = [1.2, 1.5, 2.0, 3.0, 4.0, 8.0];

fn run_verify(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let suite = cfg.suite.as_deref().unwrap_or("all");
    let known = ["identities", "biconcavity", "rank_one", "ratio", "planted", "haar", "transforms", "search", "levy_floor"];
    let selected: Vec<&str> = if suite == "all" {
        known.to_vec()
    } else {
        suite.split(',').map(str::trim).collect()
    };
    if let Some(bad) = selected.iter().find(|s| !known.contains(s)) {
        return Err(Error::Config(format!("unknown suite `{bad}`; expected one of {} or all", known.join(", "))));
    }
    let samples = cfg.samples.unwrap_or(100_000);
    let tol = cfg.tol.unwrap_or(1e-6);
    let scan = ScanConfig { blocks: cfg.blocks, tolerance: tol, ..ScanConfig::new(samples, cfg.seed) };
    for name in selected {
        match name {
            "identities" => {
                for p in cfg.p_list(&DEFAULT_P) {
                    let r = identity_scan(&ExponentContext::new(p)?, samples, cfg.seed, cfg.blocks)?;
                    report.push(Record::at_most(name, &format!("V ≤ Ũ ≤ U at p = {p}"), r.order_violations as f64, 0.0));
                    report.push(Record::at_most(name, &format!("U ≤ 0 on |y| ≤ |x| at p = {p}"), r.sign_violations as f64, 0.0));
                    if let Some(gap) = r.max_p2_gap {
                        report.push(Record::at_most(name, "U = V at p = 2", gap, 1e-12));
                    }
                }
            }
            "biconcavity" => {
                for p in cfg.p_list(&DEFAULT_P) {
                    let r = biconcavity_scan(&ExponentContext::new(p)?, &scan)?;
                    report.push(Record::at_least(name, &format!("U biconcave at p = {p}"), r.min_value, -tol));
                }
            }
            "rank_one" => {
                for p in cfg.p_list(&DEFAULT_P) {
                    let r = rank_one_scan(&ExponentContext::new(p)?, &scan)?;
                    report.push(Record::at_least(name, &format!("Ψ_U rank-one convex at p = {p}"), r.min_value, -tol));
                    if let Some(gap) = r.correspondence_gap {
                        report.push(Record::at_most(name, &format!("Γ correspondence at p = {p}"), gap, 1e-8));
                    }
                }
            }
            "ratio" => {
                let r = ratio_consistency_scan(&ExponentContext::new(4.0)?, samples.min(10_000), cfg.seed)?;
                report.push(Record::at_most(name, "finite-difference / (A+B+C) ratio constant at p = 4", r.relative_spread, 1e-4));
            }
            "planted" => {
                let f = planted_counterexample(0.5);
                let r = rank_one_scan_with("planted det − κ|A|²", 4.0, &f, &ScanConfig { samples: samples.min(1000), ..scan })?;
                report.push(Record::at_least(name, "planted non-convex function detected", r.violations as f64, 1.0));
            }
            "haar" => {
                for p in cfg.p_list(&[1.5, 3.0]) {
                    let r = haar_paley_fuzz(p, samples.min(10_000), 64, cfg.seed)?;
                    report.push(Record::at_most(name, &format!("Paley inequality at p = {p}"), r.violations as f64, 0.0));
                }
            }
            "transforms" => {
                let kinds = [TransformKind::Signs, TransformKind::Interval];
                for p in cfg.p_list(&[1.5, 3.0, 4.0]) {
                    let r = transform_fuzz(p, samples.min(10_000), 4, &kinds, cfg.seed, cfg.blocks)?;
                    report.push(Record::at_most(name, &format!("‖g‖_p ≤ (p*−1)‖f‖_p at p = {p}"), r.max_ratio, r.ceiling * (1.0 + 1e-12)));
                    report.push(Record::at_most(name, &format!("EU(f_k, g_k) non-increasing at p = {p}"), r.supermartingale_violations as f64, 0.0));
                }
            }
            "search" => {
                let r = near_extremal_search(4.0, 4, 100, cfg.seed)?;
                report.push(Record::new(name, "near-extremal search stays below p*−1", r.best_ratio, r.ceiling, r.pass));
                report.push(Record::at_least(name, "search improves on ratio 1 at p = 4", r.best_ratio, 1.0 + 1e-9));
            }
            "levy_floor" => {
                let r = gaussian_floor_scan(samples.min(1000), cfg.seed, cfg.blocks)?;
                report.push(Record::at_most(name, "Gaussian-part configurations keep |c| ≥ 2", r.violations as f64, 0.0));
            }
            _ => unreachable!(),
        }
    }
    Ok(())
}

/// A symbol by name: identity, beurling, riesz1, riesz2, riesz11, riesz12,
/// riesz22, or r2sq-r1sq (axes are 1-based in names).
pub fn named_symbol(name: &str, grid: FrequencyGrid) -> Result<MultiplierSymbolGrid> {
    match name {
        "identity" => Ok(MultiplierSymbolGrid::identity(grid)),
        "beurling" => symbol_beurling(grid),
        "riesz1" => symbol_riesz(grid, 0),
        "riesz2" => symbol_riesz(grid, 1),
        "riesz11" => symbol_second_riesz(grid, 0, 0),
        "riesz12" => symbol_second_riesz(grid, 0, 1),
        "riesz22" => symbol_second_riesz(grid, 1, 1),
        "r2sq-r1sq" => {
            let a = symbol_second_riesz(grid, 1, 1)?;
            let b = symbol_second_riesz(grid, 0, 0)?;
            MultiplierSymbolGrid::combine(&[(1.0.into(), &a), ((-1.0).into(), &b)])
        }
        other => Err(Error::Config(format!("unknown symbol `{other}`"))),
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn run_multiplier(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let input = cfg.input.as_ref().ok_or_else(|| Error::Config("multiplier needs --in".into()))?;
    let output = cfg.output.as_ref().ok_or_else(|| Error::Config("multiplier needs --out".into()))?;
    let name = cfg.symbol.as_deref().unwrap_or("beurling");
    let f = if is_csv(input) {
        let size = cfg.grid.ok_or_else(|| Error::Config("CSV input needs --grid".into()))?;
        read_csv(std::fs::File::open(input)?, FrequencyGrid::square(size, cfg.box_length)?)?
    } else {
        read_field(input, cfg.box_length)?
    };
    let m = named_symbol(name, f.grid)?;
    let g = apply_symbol(&f, &m)?;
    if is_csv(output) {
        write_csv(std::fs::File::create(output)?, &g)?;
    } else {
        write_field(output, &g)?;
    }
    let back = if is_csv(output) {
        read_csv(std::fs::File::open(output)?, g.grid)?
    } else {
        read_field(output, cfg.box_length)?
    };
    let s = "multiplier";
    report.push(Record::at_most(s, "output file round-trips", back.relative_l2_error(&g)?, 1e-15));
    if m.bound.is_finite() {
        let (nf, ng) = (crate::multiplier::lp_norm(&f, 2.0)?, crate::multiplier::lp_norm(&g, 2.0)?);
        report.push(Record::at_most(s, &format!("‖T_m f‖₂ ≤ sup|m|·‖f‖₂ for {name}"), ng, m.bound * nf * (1.0 + 1e-12)));
    }
    Ok(())
}

fn run_lehto(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let tol = cfg.tol.unwrap_or(1e-6);
    let s = "lehto";
    for p in cfg.p_list(&[2.5, 3.0, 4.0, 6.0]) {
        let mut umin = Vec::new();
        for theta in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let params = LehtoParams::new(theta, p)?;
            let r = lehto_ratio(&params)?;
            report.push(Record::close(s, &format!("ratio closed form at θ = {theta}, p = {p}"), r.numeric, r.closed_form, tol));
            let iu = integral_u_lehto(&params)?;
            report.push(Record::at_most(s, &format!("∫U vanishes at θ = {theta}, p = {p}"), iu.value.abs(), 1e-3 * iu.abs_mass));
            let c = integral_umin_lehto(&params)?;
            report.push(Record::at_most(
                s,
                &format!("∫Ũ closed form at θ = {theta}, p = {p}"),
                (c.numeric - c.closed_form).abs(),
                0.01 * c.closed_form.abs(),
            ));
            umin.push(c.numeric);
        }
        let mean = umin.iter().sum::<f64>() / umin.len() as f64;
        let spread = umin.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max) / mean.abs();
        report.push(Record::at_most(s, &format!("∫Ũ independent of θ at p = {p}"), spread, 1e-3));
    }
    Ok(())
}

fn run_simulate(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let kinds: Vec<PairKind> = match cfg.kind.as_deref() {
        None | Some("all") => vec![PairKind::Subordinate, PairKind::Orthogonal, PairKind::Conformal],
        Some(k) => vec![k.parse()?],
    };
    let spec = EnsembleSpec {
        blocks: cfg.blocks,
        ..EnsembleSpec::new(cfg.paths.unwrap_or(100_000), cfg.steps.unwrap_or(1000), cfg.seed)
    };
    let mut reports = Vec::new();
    for p in cfg.p_list(&[1.5, 4.0]) {
        for &kind in &kinds {
            let out = simulate_pair(kind, p, &spec)?;
            let r = &out.report;
            report.push(Record::new(
                "simulate",
                &format!("{} ‖Y‖_p/‖X‖_p below ceiling + 3σ at p = {p}", kind.name()),
                r.estimate,
                r.ceiling + 3.0 * r.stderr,
                r.pass,
            ));
            if let Some(w) = &out.diagnostics.weak_type {
                report.push(Record::new(
                    "simulate",
                    &format!("weak type λ^p P(|Y| ≥ λ) ≤ D_p E|X|^p at p = {p}"),
                    w.max_ratio,
                    w.constant + 3.0 * w.ratio_stderr,
                    w.pass,
                ));
            }
            reports.push(out.report);
        }
    }
    if let Some(out) = &cfg.output {
        std::fs::write(out, serde_json::to_string_pretty(&reports)? + "\n")?;
    }
    Ok(())
}

fn run_quasiconvex(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let tol = cfg.tol.unwrap_or(1e-6);
    let family = match cfg.kind.as_deref() {
        None | Some("mixed") => DeformationFamily::Mixed,
        Some("trigonometric") => DeformationFamily::Trigonometric,
        Some("radial_bump") => DeformationFamily::RadialBump,
        Some(other) => return Err(Error::Config(format!("unknown deformation family `{other}`"))),
    };
    let qc = QuasiconvexityConfig {
        blocks: cfg.blocks,
        resolution: cfg.grid.unwrap_or(64),
        tolerance: tol,
        ..QuasiconvexityConfig::new(cfg.samples.unwrap_or(200), cfg.seed)
    };
    for p in cfg.p_list(&[1.5, 3.0, 4.0]) {
        let ctx = ExponentContext::new(p)?;
        for base in [Matrix2::IDENTITY, Matrix2::new(1.0, 0.5, -0.25, 2.0)] {
            let r = quasiconvexity_probe(&ctx, base, family, &qc)?;
            report.push(Record::new(
                "quasiconvex",
                &format!("Ψ_U quasiconvex probe at p = {p}, base ({}, {}, {}, {})", base.a, base.b, base.c, base.d),
                r.min_value,
                -tol,
                !r.violation_candidate,
            ));
        }
    }
    Ok(())
}

/// Upper bounds for named symbols: cot(π/2p*) for first-order Riesz
/// transforms, p*−1 for second-order ones, 1.575(p*−1) for Beurling–Ahlfors.
pub fn known_ceiling(name: &str, p: f64) -> Result<Option<f64>> {
    Ok(match name {
        "identity" => Some(1.0),
        "riesz1" | "riesz2" => Some(cot_constant(p)?),
        "riesz11" | "riesz22" | "r2sq-r1sq" => Some(p_star(p)? - 1.0),
        "beurling" => Some(1.575 * (p_star(p)? - 1.0)),
        _ => None,
    })
}

fn run_probe(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let name = cfg.symbol.as_deref().unwrap_or("beurling");
    let grid = FrequencyGrid::square(cfg.grid.unwrap_or(128), cfg.box_length)?;
    let m = named_symbol(name, grid)?;
    for p in cfg.p_list(&[4.0]) {
        let family = match cfg.kind.as_deref() {
            None | Some("bumps") => ProbeFamily::Bumps,
            Some("band") => ProbeFamily::BandLimited { max_wavenumber: 8 },
            Some("lehto") => ProbeFamily::LehtoType { theta_min: 0.5, theta_max: 0.99, p, log_range: 3.0 },
            Some(other) => return Err(Error::Config(format!("unknown probe family `{other}`"))),
        };
        let probe_cfg = ProbeConfig {
            trials: cfg.samples.unwrap_or(64),
            seed: cfg.seed,
            blocks: cfg.blocks,
            family,
            ceiling: known_ceiling(name, p)?,
        };
        let r = operator_ratio_probe(&m, p, &probe_cfg)?;
        let bound = r.ceiling.unwrap_or(f64::INFINITY);
        report.push(Record::new(
            "probe",
            &format!("‖T_m f‖_p/‖f‖_p never exceeds the known bound for {name} at p = {p}"),
            r.max_ratio,
            bound,
            !r.exceeded_ceiling,
        ));
    }
    Ok(())
}

//! Euler sums for pairs of stochastic integrals X = ∫H·dB, Y = ∫K·dB driven
//! by a planar Brownian motion.
//!
//! The integrands are simple feedback processes built from the current state
//! (so they are predictable) and satisfy the pair constraint exactly:
//!
//! * subordinate: H = (cos φ, sin φ), K = κ·sgn(X)·H with φ = X;
//! * orthogonal:  H = (cos φ, sin φ), K = κ·(−sin φ, cos φ) with φ = X + Y;
//! * conformal:   X = (X¹, X²) with H¹ = (1, 0), H² = ½(cos φ, sin φ), and
//!   Y = (Y¹, Y²) with K¹ = s(cos ψ, sin ψ), K² = s(−sin ψ, cos ψ), where
//!   2s² = κ²(|H¹|² + |H²|²), so K¹·K² = 0, |K¹| = |K²| and Y << X.

use crate::constants::{weak_dp, ExponentContext};
use crate::error::{Error, Result};
use crate::functions::{eval_weaktype_w, PlanePoint};
use crate::rng::{block_range, substream, BOOTSTRAP_STREAM};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const BOOTSTRAP_RESAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Subordinate,
    Orthogonal,
    Conformal,
}

impl PairKind {
    pub fn name(self) -> &'static str {
        match self {
            PairKind::Subordinate => "subordinate",
            PairKind::Orthogonal => "orthogonal",
            PairKind::Conformal => "conformal",
        }
    }

    /// The sharp (or best known) L^p ceiling for ‖Y‖_p / ‖X‖_p.
    pub fn ceiling(self, ctx: &ExponentContext) -> f64 {
        match self {
            PairKind::Subordinate => ctx.p_star - 1.0,
            PairKind::Orthogonal => (std::f64::consts::PI / (2.0 * ctx.p_star)).tan().recip(),
            PairKind::Conformal if ctx.p >= 2.0 => (ctx.p * (ctx.p - 1.0) / 2.0).sqrt(),
            PairKind::Conformal => ctx.p_star - 1.0,
        }
    }
}

impl std::str::FromStr for PairKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subordinate" => Ok(PairKind::Subordinate),
            "orthogonal" => Ok(PairKind::Orthogonal),
            "conformal" => Ok(PairKind::Conformal),
            other => Err(Error::Config(format!("unknown pair kind `{other}`"))),
        }
    }
}

/// Parameters of a simulated ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub n_paths: usize,
    pub n_steps: usize,
    pub dt: f64,
    pub seed: u64,
    pub blocks: usize,
    /// κ = |K| / |H| ∈ (0, 1].
    pub scale: f64,
    /// Also run the same Brownian paths at step dt/2 to expose the
    /// discretisation bias.
    pub refine: bool,
}

impl EnsembleSpec {
    /// Unit horizon split into `n_steps` steps.
    pub fn new(n_paths: usize, n_steps: usize, seed: u64) -> Self {
        Self { n_paths, n_steps, dt: 1.0 / n_steps.max(1) as f64, seed, blocks: 16, scale: 1.0, refine: false }
    }

    fn validate(&self) -> Result<()> {
        if self.n_paths < 2 || self.n_steps == 0 || self.blocks == 0 {
            return Err(Error::Config("an ensemble needs at least two paths, one step and one block".into()));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Config(format!("time step {} must be positive", self.dt)));
        }
        if !(self.scale > 0.0 && self.scale <= 1.0) {
            return Err(Error::Config(format!("scale {} must lie in (0, 1]", self.scale)));
        }
        Ok(())
    }
}

/// Terminal values and quadratic variations of every path. Increments and
/// integrands are not retained; an ensemble is regenerated from its seed.
#[derive(Debug, Clone, PartialEq)]
pub struct PathEnsemble {
    pub kind: PairKind,
    pub n_steps: usize,
    pub dt: f64,
    pub x: Vec<PlanePoint>,
    pub y: Vec<PlanePoint>,
    /// Σ|H|²dt per path.
    pub qv_x: Vec<f64>,
    /// Σ|K|²dt per path.
    pub qv_y: Vec<f64>,
    /// Steps where |K|² > |H|² (beyond rounding), over all paths.
    pub subordination_violations: usize,
    /// Largest per-path |⟨Y¹⟩ − ⟨Y²⟩| + |⟨Y¹, Y²⟩| (conformal kind only).
    pub conformal_defect: f64,
}

impl PathEnsemble {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

#[derive(Default, Clone, Copy)]
struct PathState {
    x: PlanePoint,
    y: PlanePoint,
    qx: f64,
    qy: f64,
    q11: f64,
    q22: f64,
    q12: f64,
    violations: usize,
}

impl PathState {
    fn step(&mut self, kind: PairKind, kappa: f64, db: PlanePoint, dt: f64) {
        let (dx, dy, hh, kk) = match kind {
            PairKind::Subordinate => {
                let h = PlanePoint::new(self.x.re.cos(), self.x.re.sin());
                let sign = if self.x.re >= 0.0 { 1.0 } else { -1.0 };
                let k = h * (kappa * sign);
                (PlanePoint::new(h.dot(db), 0.0), PlanePoint::new(k.dot(db), 0.0), h.norm_sqr(), k.norm_sqr())
            }
            PairKind::Orthogonal => {
                let phi = self.x.re + self.y.re;
                let h = PlanePoint::new(phi.cos(), phi.sin());
                let k = PlanePoint::new(-phi.sin(), phi.cos()) * kappa;
                (PlanePoint::new(h.dot(db), 0.0), PlanePoint::new(k.dot(db), 0.0), h.norm_sqr(), k.norm_sqr())
            }
            PairKind::Conformal => {
                let phi = self.x.re - self.x.im;
                let h1 = PlanePoint::new(1.0, 0.0);
                let h2 = PlanePoint::new(phi.cos(), phi.sin()) * 0.5;
                let hh = h1.norm_sqr() + h2.norm_sqr();
                let s = kappa * (hh / 2.0).sqrt();
                let psi = self.x.im + self.y.re;
                let k1 = PlanePoint::new(psi.cos(), psi.sin()) * s;
                let k2 = PlanePoint::new(-psi.sin(), psi.cos()) * s;
                self.q11 += k1.norm_sqr() * dt;
                self.q22 += k2.norm_sqr() * dt;
                self.q12 += k1.dot(k2) * dt;
                (
                    PlanePoint::new(h1.dot(db), h2.dot(db)),
                    PlanePoint::new(k1.dot(db), k2.dot(db)),
                    hh,
                    k1.norm_sqr() + k2.norm_sqr(),
                )
            }
        };
        if kk > hh * (1.0 + 1e-12) {
            self.violations += 1;
        }
        self.x = self.x + dx;
        self.y = self.y + dy;
        self.qx += hh * dt;
        self.qy += kk * dt;
    }
}

struct BlockOut {
    coarse: Vec<PathState>,
    fine: Vec<PathState>,
}

fn run_blocks(kind: PairKind, spec: &EnsembleSpec) -> Vec<BlockOut> {
    (0..spec.blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = substream(spec.seed, b as u64);
            let range = block_range(spec.n_paths, spec.blocks, b);
            let mut coarse = Vec::with_capacity(range.len());
            let mut fine = Vec::with_capacity(if spec.refine { range.len() } else { 0 });
            let kappa = spec.scale;
            for _ in range {
                let mut c = PathState::default();
                let mut f = PathState::default();
                for _ in 0..spec.n_steps {
                    if spec.refine {
                        let h = spec.dt / 2.0;
                        let sd = h.sqrt();
                        let a = PlanePoint::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)) * sd;
                        let b = PlanePoint::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)) * sd;
                        f.step(kind, kappa, a, h);
                        f.step(kind, kappa, b, h);
                        c.step(kind, kappa, a + b, spec.dt);
                    } else {
                        let sd = spec.dt.sqrt();
                        let db = PlanePoint::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)) * sd;
                        c.step(kind, kappa, db, spec.dt);
                    }
                }
                coarse.push(c);
                if spec.refine {
                    fine.push(f);
                }
            }
            BlockOut { coarse, fine }
        })
        .collect()
}

fn collect(kind: PairKind, n_steps: usize, dt: f64, states: Vec<PathState>) -> PathEnsemble {
    let mut e = PathEnsemble {
        kind,
        n_steps,
        dt,
        x: Vec::with_capacity(states.len()),
        y: Vec::with_capacity(states.len()),
        qv_x: Vec::with_capacity(states.len()),
        qv_y: Vec::with_capacity(states.len()),
        subordination_violations: 0,
        conformal_defect: 0.0,
    };
    for s in states {
        e.x.push(s.x);
        e.y.push(s.y);
        e.qv_x.push(s.qx);
        e.qv_y.push(s.qy);
        e.subordination_violations += s.violations;
        e.conformal_defect = e.conformal_defect.max((s.q11 - s.q22).abs() + s.q12.abs());
    }
    e
}

/// Simulates the ensemble at step dt and, when `spec.refine` is set, the
/// same Brownian paths at step dt/2.
pub fn simulate_ensemble(kind: PairKind, spec: &EnsembleSpec) -> Result<(PathEnsemble, Option<PathEnsemble>)> {
    spec.validate()?;
    let blocks = run_blocks(kind, spec);
    let (mut coarse, mut fine) = (Vec::new(), Vec::new());
    for b in blocks {
        coarse.extend(b.coarse);
        fine.extend(b.fine);
    }
    let coarse = collect(kind, spec.n_steps, spec.dt, coarse);
    let fine = spec.refine.then(|| collect(kind, spec.n_steps * 2, spec.dt / 2.0, fine));
    if coarse.qv_x.iter().all(|&q| q == 0.0) {
        return Err(Error::Degenerate("the ensemble has zero quadratic variation".into()));
    }
    Ok((coarse, fine))
}

fn ratio(x: &[PlanePoint], y: &[PlanePoint], p: f64, idx: impl Iterator<Item = usize>) -> f64 {
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in idx {
        sx += x[i].norm().powf(p);
        sy += y[i].norm().powf(p);
    }
    (sy / sx).powf(1.0 / p)
}

/// (point estimate, bootstrap standard error) of ‖Y‖_p / ‖X‖_p.
pub fn ratio_with_bootstrap(e: &PathEnsemble, p: f64, seed: u64) -> (f64, f64) {
    let n = e.len();
    let estimate = ratio(&e.x, &e.y, p, 0..n);
    let mut rng = substream(seed, BOOTSTRAP_STREAM);
    let mut draws = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
    let mut idx = vec![0usize; n];
    for _ in 0..BOOTSTRAP_RESAMPLES {
        idx.iter_mut().for_each(|i| *i = rng.random_range(0..n));
        draws.push(ratio(&e.x, &e.y, p, idx.iter().copied()));
    }
    let m = draws.iter().sum::<f64>() / draws.len() as f64;
    let var = draws.iter().map(|d| (d - m).powi(2)).sum::<f64>() / (draws.len() - 1) as f64;
    (estimate, var.sqrt())
}

/// The simulation summary in its fixed JSON layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub kind: PairKind,
    pub p: f64,
    pub ceiling: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub n_paths: usize,
    pub n_steps: usize,
    pub dt: f64,
    pub seed: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakTypeCheck {
    /// D_p.
    pub constant: f64,
    /// max over λ of λ^p P(|Y| ≥ λ) / E|X|^p.
    pub max_ratio: f64,
    pub lambda_at_max: f64,
    pub ratio_stderr: f64,
    /// E W(X/λ, Y/λ) with c = D_p^{1/p} at λ = ‖X‖_p, and its standard error.
    pub expected_w: f64,
    pub expected_w_stderr: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationDiagnostics {
    pub scale: f64,
    pub blocks: usize,
    /// Ratio estimate on the same paths at dt/2, and its difference from the
    /// dt estimate.
    pub refined_estimate: Option<f64>,
    pub bias_estimate: Option<f64>,
    pub subordination_violations: usize,
    pub conformal_defect: f64,
    pub mean_qv_x: f64,
    pub mean_qv_y: f64,
    pub weak_type: Option<WeakTypeCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationOutcome {
    pub report: SimulationReport,
    pub diagnostics: SimulationDiagnostics,
}

const WEAK_LAMBDAS: [f64; 7] = [0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0];

fn weak_type_check(e: &PathEnsemble, p: f64) -> Result<WeakTypeCheck> {
    let dp = weak_dp(p)?;
    let n = e.len() as f64;
    let ex = e.x.iter().map(|x| x.norm().powf(p)).sum::<f64>() / n;
    let norm_x = ex.powf(1.0 / p);
    let (mut best, mut best_lambda, mut best_se) = (f64::NEG_INFINITY, 0.0, 0.0);
    let mut pass = true;
    for &s in &WEAK_LAMBDAS {
        let lambda = s * norm_x;
        let prob = e.y.iter().filter(|y| y.norm() >= lambda).count() as f64 / n;
        let scale = lambda.powf(p) / ex;
        let r = scale * prob;
        let se = scale * (prob * (1.0 - prob) / n).sqrt();
        if r > dp + 3.0 * se {
            pass = false;
        }
        if r > best {
            (best, best_lambda, best_se) = (r, lambda, se);
        }
    }
    let c = dp.powf(1.0 / p);
    let w: Vec<f64> = e
        .x
        .iter()
        .zip(&e.y)
        .map(|(&x, &y)| eval_weaktype_w(x * (1.0 / norm_x), y * (1.0 / norm_x), c, p))
        .collect();
    let mw = w.iter().sum::<f64>() / n;
    let sw = (w.iter().map(|v| (v - mw).powi(2)).sum::<f64>() / (n - 1.0) / n).sqrt();
    pass &= mw <= 3.0 * sw;
    Ok(WeakTypeCheck {
        constant: dp,
        max_ratio: best,
        lambda_at_max: best_lambda,
        ratio_stderr: best_se,
        expected_w: mw,
        expected_w_stderr: sw,
        pass,
    })
}

/// Simulates a pair of the given kind and compares ‖Y‖_p/‖X‖_p with its
/// ceiling at three bootstrap standard errors. Orthogonal pairs with
/// 1 < p ≤ 2 are also checked against the weak-type constant D_p.
pub fn simulate_pair(kind: PairKind, p: f64, spec: &EnsembleSpec) -> Result<SimulationOutcome> {
    let ctx = ExponentContext::new(p)?;
    let (coarse, fine) = simulate_ensemble(kind, spec)?;
    let ceiling = kind.ceiling(&ctx);
    let (estimate, stderr) = ratio_with_bootstrap(&coarse, p, spec.seed);
    let refined = fine.as_ref().map(|f| ratio(&f.x, &f.y, p, 0..f.len()));
    let weak_type = match kind {
        PairKind::Orthogonal if p <= 2.0 => Some(weak_type_check(&coarse, p)?),
        _ => None,
    };
    let mut violations = coarse.subordination_violations;
    let mut defect = coarse.conformal_defect;
    if let Some(f) = &fine {
        violations += f.subordination_violations;
        defect = defect.max(f.conformal_defect);
    }
    let pass = estimate <= ceiling + 3.0 * stderr
        && violations == 0
        && defect <= 1e-12
        && weak_type.as_ref().is_none_or(|w| w.pass);
    let n = coarse.len() as f64;
    Ok(SimulationOutcome {
        report: SimulationReport {
            kind,
            p,
            ceiling,
            estimate,
            stderr,
            n_paths: spec.n_paths,
            n_steps: spec.n_steps,
            dt: spec.dt,
            seed: spec.seed,
            pass,
        },
        diagnostics: SimulationDiagnostics {
            scale: spec.scale,
            blocks: spec.blocks,
            refined_estimate: refined,
            bias_estimate: refined.map(|r| r - estimate),
            subordination_violations: violations,
            conformal_defect: defect,
            mean_qv_x: coarse.qv_x.iter().sum::<f64>() / n,
            mean_qv_y: coarse.qv_y.iter().sum::<f64>() / n,
            weak_type,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n_paths: usize, n_steps: usize, seed: u64) -> EnsembleSpec {
        EnsembleSpec { blocks: 4, ..EnsembleSpec::new(n_paths, n_steps, seed) }
    }

    #[test]
    fn isometry_cases() {
        let out = simulate_pair(PairKind::Orthogonal, 2.0, &spec(20_000, 100, 1)).unwrap();
        let r = &out.report;
        assert!((r.estimate - 1.0).abs() <= 3.0 * r.stderr, "{r:?}");
        assert!(r.pass);
        let half = EnsembleSpec { scale: 0.5, ..spec(20_000, 100, 2) };
        let r = simulate_pair(PairKind::Subordinate, 2.0, &half).unwrap().report;
        assert!((r.estimate - 0.5).abs() <= 3.0 * r.stderr, "{r:?}");
    }

    #[test]
    fn bookkeeping_invariants() {
        let s = EnsembleSpec { refine: true, ..spec(500, 50, 3) };
        for kind in [PairKind::Subordinate, PairKind::Orthogonal, PairKind::Conformal] {
            let (c, f) = simulate_ensemble(kind, &s).unwrap();
            let f = f.unwrap();
            for e in [&c, &f] {
                assert_eq!(e.subordination_violations, 0);
                assert!(e.conformal_defect <= 1e-12);
                for (qx, qy) in e.qv_x.iter().zip(&e.qv_y) {
                    assert!(qy <= &(qx * (1.0 + 1e-12)));
                }
            }
        }
    }

    #[test]
    fn conformal_and_weak_type() {
        let out = simulate_pair(PairKind::Conformal, 4.0, &spec(10_000, 100, 4)).unwrap();
        assert!(out.report.pass, "{out:?}");
        assert!((out.report.ceiling - 6f64.sqrt()).abs() < 1e-15);
        let weak = simulate_pair(PairKind::Orthogonal, 1.5, &spec(10_000, 100, 5)).unwrap();
        let w = weak.diagnostics.weak_type.unwrap();
        assert!(w.pass && w.max_ratio <= w.constant, "{w:?}");
    }

    #[test]
    fn reproducible_and_validated() {
        let a = simulate_pair(PairKind::Subordinate, 3.0, &spec(2_000, 20, 6)).unwrap();
        let b = simulate_pair(PairKind::Subordinate, 3.0, &spec(2_000, 20, 6)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(simulate_pair(PairKind::Subordinate, 3.0, &EnsembleSpec { scale: 1.5, ..spec(10, 2, 0) }).is_err());
        assert!(simulate_pair(PairKind::Subordinate, 3.0, &spec(1, 2, 0)).is_err());
        assert!("diagonal".parse::<PairKind>().is_err());
    }
}

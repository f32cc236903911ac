//! Finite-difference checks of biconcavity, rank-one convexity and
//! quasiconvexity.

use crate::constants::ExponentContext;
use crate::error::{Error, Result};
use crate::functions::{eval_psi_u, eval_u, gamma_map, second_order_terms, Matrix2, PlanePoint};
use crate::multiplier::{symbol_second_riesz, ComplexField, FftEngine, MultiplierSymbolGrid};
use crate::rng::{strided_count, substream};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A point and direction in ℝ⁴, read either as a pair (x, y) of plane points
/// `[x.re, x.im, y.re, y.im]` or as a matrix `[a, b, c, d]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionalProbe {
    pub base: [f64; 4],
    pub direction: [f64; 4],
    pub step: f64,
}

pub fn pair_to_array(x: PlanePoint, y: PlanePoint) -> [f64; 4] {
    [x.re, x.im, y.re, y.im]
}

pub fn array_to_pair(v: &[f64; 4]) -> (PlanePoint, PlanePoint) {
    (PlanePoint::new(v[0], v[1]), PlanePoint::new(v[2], v[3]))
}

pub fn matrix_to_array(m: Matrix2) -> [f64; 4] {
    [m.a, m.b, m.c, m.d]
}

pub fn array_to_matrix(v: &[f64; 4]) -> Matrix2 {
    Matrix2::new(v[0], v[1], v[2], v[3])
}

impl DirectionalProbe {
    pub fn new(base: [f64; 4], direction: [f64; 4], step: f64) -> Result<Self> {
        if !(1e-6..=1e-2).contains(&step) {
            return Err(Error::Config(format!("step must lie in [1e-6, 1e-2], got {step}")));
        }
        if base.iter().chain(&direction).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("probe base or direction".into()));
        }
        Ok(Self { base, direction, step })
    }

    pub fn pair(x: PlanePoint, y: PlanePoint, h: PlanePoint, k: PlanePoint, step: f64) -> Result<Self> {
        Self::new(pair_to_array(x, y), pair_to_array(h, k), step)
    }

    pub fn matrix(base: Matrix2, direction: Matrix2, step: f64) -> Result<Self> {
        Self::new(matrix_to_array(base), matrix_to_array(direction), step)
    }

    fn at(&self, t: f64) -> [f64; 4] {
        std::array::from_fn(|i| self.base[i] + t * self.direction[i])
    }
}

/// Central second differences at steps h and h/2 and their Richardson
/// combination (4 D(h/2) − D(h)) / 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondDifference {
    pub extrapolated: f64,
    pub fine: f64,
}

pub fn second_difference(f: &dyn Fn(&[f64; 4]) -> f64, probe: &DirectionalProbe) -> Result<SecondDifference> {
    let f0 = f(&probe.base);
    let d = |h: f64| (f(&probe.at(h)) - 2.0 * f0 + f(&probe.at(-h))) / (h * h);
    let coarse = d(probe.step);
    let fine = d(0.5 * probe.step);
    let extrapolated = (4.0 * fine - coarse) / 3.0;
    if !extrapolated.is_finite() {
        return Err(Error::NonFinite("second difference".into()));
    }
    Ok(SecondDifference { extrapolated, fine })
}

/// Richardson-extrapolated second derivative of `t ↦ f(base + t·direction)`
/// at t = 0.
pub fn directional_second_diff(f: &dyn Fn(&[f64; 4]) -> f64, probe: &DirectionalProbe) -> Result<f64> {
    Ok(second_difference(f, probe)?.extrapolated)
}

/// Sample count, seed and tolerances shared by the scans.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScanConfig {
    pub samples: usize,
    pub seed: u64,
    pub blocks: usize,
    pub tolerance: f64,
    pub step: f64,
}

impl ScanConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed, blocks: 16, tolerance: 1e-6, step: 1e-3 }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 || self.blocks == 0 {
            return Err(Error::Config("samples and blocks must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of a convexity scan. `min_value` is the smallest observed
/// convexity margin: the second difference for convexity checks and its
/// negative for concavity checks, so a violation is `min_value < −tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub function: String,
    pub p: f64,
    pub samples: usize,
    pub min_value: f64,
    pub violations: usize,
    pub worst_case_parameters: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correspondence_gap: Option<f64>,
}

#[derive(Debug, Clone)]
struct Partial {
    min: f64,
    worst: Vec<f64>,
    violations: usize,
    gap: f64,
}

/// Evaluates `margin` on every sample. Sample j is the next draw of stream
/// (seed, j mod blocks); blocks are reduced in index order, so the result
/// does not depend on scheduling.
fn run_scan<S, M>(cfg: &ScanConfig, sample: S, margin: M) -> Result<Partial>
where
    S: Fn(&mut ChaCha8Rng) -> DirectionalProbe + Sync,
    M: Fn(&DirectionalProbe) -> Result<(f64, f64)> + Sync,
{
    cfg.validate()?;
    let partials: Vec<Result<Partial>> = (0..cfg.blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = substream(cfg.seed, b as u64);
            let mut acc = Partial { min: f64::INFINITY, worst: Vec::new(), violations: 0, gap: 0.0 };
            for _ in 0..strided_count(cfg.samples, cfg.blocks, b) {
                let probe = sample(&mut rng);
                let (m, gap) = margin(&probe)?;
                if m < -cfg.tolerance {
                    acc.violations += 1;
                }
                if m < acc.min {
                    acc.min = m;
                    acc.worst = probe.base.iter().chain(&probe.direction).copied().collect();
                }
                acc.gap = acc.gap.max(gap);
            }
            Ok(acc)
        })
        .collect();
    let mut total = Partial { min: f64::INFINITY, worst: Vec::new(), violations: 0, gap: 0.0 };
    for p in partials {
        let p = p?;
        if p.min < total.min {
            total.min = p.min;
            total.worst = p.worst;
        }
        total.violations += p.violations;
        total.gap = total.gap.max(p.gap);
    }
    Ok(total)
}

fn random_point(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64) -> PlanePoint {
    let r = rng.random_range(r_min..=r_max);
    PlanePoint::new(r, 0.0).rotate(rng.random_range(0.0..2.0 * PI))
}

/// Base points with |x|, |y| ∈ [0.1, 0.5], keeping the stencil away from the
/// non-smooth set |x||y| = 0 and the values of U of order one.
fn random_pair_probe(rng: &mut ChaCha8Rng, step: f64, k_over_h_max: f64) -> DirectionalProbe {
    let x = random_point(rng, 0.1, 0.5);
    let y = random_point(rng, 0.1, 0.5);
    let h = random_point(rng, 0.2, 1.0);
    // a quarter of the probes sit on the extremal boundary |k| = |h|
    let ratio = if rng.random_bool(0.25) { k_over_h_max } else { rng.random_range(0.0..=k_over_h_max) };
    let k = PlanePoint::new(h.norm() * ratio, 0.0).rotate(rng.random_range(0.0..2.0 * PI));
    DirectionalProbe { base: pair_to_array(x, y), direction: pair_to_array(h, k), step }
}

/// Concavity of t ↦ U(x + th, y + tk) for |k| ≤ |h|.
pub fn biconcavity_scan(ctx: &ExponentContext, cfg: &ScanConfig) -> Result<ScanReport> {
    let ctx = *ctx;
    let u = move |v: &[f64; 4]| {
        let (x, y) = array_to_pair(v);
        eval_u(x, y, &ctx)
    };
    let step = cfg.step;
    let r = run_scan(
        cfg,
        |rng| random_pair_probe(rng, step, 1.0),
        |probe| Ok((-directional_second_diff(&u, probe)?, 0.0)),
    )?;
    Ok(ScanReport {
        function: "U".into(),
        p: ctx.p,
        samples: cfg.samples,
        min_value: r.min,
        violations: r.violations,
        worst_case_parameters: r.worst,
        correspondence_gap: None,
    })
}

/// A base matrix A with |z|, |w| ∈ [0.1, 0.5] for (z, w) = Γ(A), and a
/// rank-one direction h′ ⊗ k′.
fn random_rank_one_probe(rng: &mut ChaCha8Rng, step: f64) -> DirectionalProbe {
    let z = random_point(rng, 0.1, 0.5);
    let w = random_point(rng, 0.1, 0.5);
    // Γ⁻¹: a = (z₁+w₁)/2, d = (z₁−w₁)/2, c = (z₂+w₂)/2, b = (w₂−z₂)/2
    let base = Matrix2::new((z.re + w.re) / 2.0, (w.im - z.im) / 2.0, (z.im + w.im) / 2.0, (z.re - w.re) / 2.0);
    let h = random_point(rng, 0.3, 1.0);
    let k = random_point(rng, 0.3, 1.0);
    DirectionalProbe { base: matrix_to_array(base), direction: matrix_to_array(Matrix2::outer(h, k)), step }
}

/// Scans an arbitrary matrix function for convexity along rank-one lines.
pub fn rank_one_scan_with(
    name: &str,
    p: f64,
    f: &(dyn Fn(&[f64; 4]) -> f64 + Sync),
    cfg: &ScanConfig,
) -> Result<ScanReport> {
    let step = cfg.step;
    let r = run_scan(cfg, |rng| random_rank_one_probe(rng, step), |probe| Ok((directional_second_diff(f, probe)?, 0.0)))?;
    Ok(ScanReport {
        function: name.into(),
        p,
        samples: cfg.samples,
        min_value: r.min,
        violations: r.violations,
        worst_case_parameters: r.worst,
        correspondence_gap: None,
    })
}

const CORRESPONDENCE_STEP: f64 = 1e-2;

/// Rank-one convexity of Ψ_U. Each probe is also mapped through Γ: along
/// A + t h′⊗k′ the pair (w, z) moves linearly with |Δz| = |Δw|, and the
/// second difference of −Ψ_U must equal that of U along the image line.
/// The largest discrepancy is reported as `correspondence_gap`.
pub fn rank_one_scan(ctx: &ExponentContext, cfg: &ScanConfig) -> Result<ScanReport> {
    let ctx = *ctx;
    let psi = move |v: &[f64; 4]| eval_psi_u(array_to_matrix(v), &ctx);
    let u = move |v: &[f64; 4]| {
        let (x, y) = array_to_pair(v);
        eval_u(x, y, &ctx)
    };
    let step = cfg.step;
    let r = run_scan(
        cfg,
        |rng| random_rank_one_probe(rng, step),
        |probe| {
            let d_psi = directional_second_diff(&psi, probe)?;
            // Both sides share the truncation error of the same line, so the
            // comparison uses the widest step to keep cancellation noise low.
            let wide = DirectionalProbe { step: CORRESPONDENCE_STEP, ..*probe };
            let (z, w) = gamma_map(array_to_matrix(&wide.base));
            let (dz, dw) = gamma_map(array_to_matrix(&wide.direction));
            let image = DirectionalProbe {
                base: pair_to_array(w, z),
                direction: pair_to_array(dw, dz),
                step: CORRESPONDENCE_STEP,
            };
            let gap = directional_second_diff(&psi, &wide)? + directional_second_diff(&u, &image)?;
            Ok((d_psi, gap.abs()))
        },
    )?;
    Ok(ScanReport {
        function: "Psi_U".into(),
        p: ctx.p,
        samples: cfg.samples,
        min_value: r.min,
        violations: r.violations,
        worst_case_parameters: r.worst,
        correspondence_gap: Some(r.gap),
    })
}

/// det(A) − κ|A|², concave along every line, used to check that the scan
/// harness does flag violations.
pub fn planted_counterexample(kappa: f64) -> impl Fn(&[f64; 4]) -> f64 + Sync {
    move |v: &[f64; 4]| {
        let m = array_to_matrix(v);
        m.det() - kappa * m.norm().powi(2)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatioReport {
    pub p: f64,
    pub probes: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// (max − min) / mean
    pub relative_spread: f64,
}

/// Ratio of the finite-difference G″(0) to −(A + B + C) over random probes
/// with |k| ≤ 0.9|h| and |x|, |y| ≥ 0.1; constant when the second-order
/// decomposition is right.
pub fn ratio_consistency_scan(ctx: &ExponentContext, probes: usize, seed: u64) -> Result<RatioReport> {
    let ctx = *ctx;
    let u = move |v: &[f64; 4]| {
        let (x, y) = array_to_pair(v);
        eval_u(x, y, &ctx)
    };
    let mut rng = substream(seed, 0);
    let mut ratios = Vec::with_capacity(probes);
    for _ in 0..probes {
        let probe = random_pair_probe(&mut rng, 1e-3, 0.9);
        let (x, y) = array_to_pair(&probe.base);
        let (h, k) = array_to_pair(&probe.direction);
        let (a, b, c) = second_order_terms(x, y, h, k, &ctx)?;
        ratios.push(directional_second_diff(&u, &probe)? / -(a + b + c));
    }
    let mean = ratios.iter().sum::<f64>() / probes as f64;
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(RatioReport { p: ctx.p, probes, mean, min, max, relative_spread: (max - min) / mean })
}

/// Parameters of a generated deformation field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FieldParams {
    Zero,
    /// Cut-off trigonometric polynomial; each mode is
    /// (m, n, cos coefficient, sin coefficient) for both components.
    Trigonometric { modes: Vec<(i32, i32, PlanePoint, PlanePoint)> },
    /// f(z) = φ(|z − c|/ρ)·(α(z − c) + β conj(z − c)) with φ(s) = (1 − s²)³₊.
    RadialBump { center: PlanePoint, radius: f64, alpha: PlanePoint, beta: PlanePoint },
    /// Lehto's map on the disc of radius r₀, continued by 1/z̄ − z/R² and
    /// vanishing from radius R·r₀ on.
    LehtoType { theta: f64, p: f64, inner_radius: f64, outer_ratio: f64 },
}

/// Which random families a quasiconvexity probe draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeformationFamily {
    Trigonometric,
    RadialBump,
    Mixed,
}

/// A compactly supported map sampled on an N×N grid over [−1, 1]².
#[derive(Debug, Clone)]
pub struct DeformationField {
    pub n: usize,
    pub half_width: f64,
    pub values: Vec<PlanePoint>,
    pub params: FieldParams,
    pub lipschitz: f64,
}

fn bump(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - s * s).powi(3)
    }
}

fn cmul(a: PlanePoint, b: PlanePoint) -> PlanePoint {
    PlanePoint::new(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)
}

/// Support radius for the generated families; the outermost grid rows stay
/// zero for every N ≥ 16.
const SUPPORT: f64 = 0.85;

impl FieldParams {
    pub fn evaluate(&self, z: PlanePoint) -> PlanePoint {
        match self {
            FieldParams::Zero => PlanePoint::ZERO,
            FieldParams::Trigonometric { modes } => {
                let cut = bump(z.re / SUPPORT) * bump(z.im / SUPPORT);
                if cut == 0.0 {
                    return PlanePoint::ZERO;
                }
                let mut acc = PlanePoint::ZERO;
                for (m, n, c, s) in modes {
                    let phase = PI * (*m as f64 * z.re + *n as f64 * z.im);
                    acc = acc + *c * phase.cos() + *s * phase.sin();
                }
                acc * cut
            }
            FieldParams::RadialBump { center, radius, alpha, beta } => {
                let u = z - *center;
                let phi = bump(u.norm() / radius);
                if phi == 0.0 {
                    return PlanePoint::ZERO;
                }
                (cmul(*alpha, u) + cmul(*beta, PlanePoint::new(u.re, -u.im))) * phi
            }
            FieldParams::LehtoType { theta, p, inner_radius, outer_ratio } => {
                let u = z * (1.0 / inner_radius);
                let r2 = u.norm_sqr();
                let big = outer_ratio * outer_ratio;
                let g = if r2 == 0.0 {
                    PlanePoint::ZERO
                } else if r2 < 1.0 {
                    u * (r2.powf(-theta / p) * (1.0 - 1.0 / big))
                } else if r2 < big {
                    PlanePoint::new(u.re / r2, u.im / r2) - u * (1.0 / big)
                } else {
                    PlanePoint::ZERO
                };
                g * *inner_radius
            }
        }
    }

    fn random(family: DeformationFamily, rng: &mut ChaCha8Rng) -> Self {
        let family = match family {
            DeformationFamily::Mixed => {
                if rng.random_bool(0.5) {
                    DeformationFamily::Trigonometric
                } else {
                    DeformationFamily::RadialBump
                }
            }
            f => f,
        };
        let amp = |rng: &mut ChaCha8Rng, a: f64| PlanePoint::new(rng.random_range(-a..a), rng.random_range(-a..a));
        match family {
            DeformationFamily::Trigonometric => {
                let terms = rng.random_range(1..=4);
                let modes = (0..terms)
                    .map(|_| {
                        let m = rng.random_range(-4..=4);
                        let n = rng.random_range(-4..=4);
                        (m, n, amp(rng, 0.3), amp(rng, 0.3))
                    })
                    .collect();
                FieldParams::Trigonometric { modes }
            }
            _ => {
                let radius = rng.random_range(0.2..0.6);
                let lim = (SUPPORT - radius).max(0.0);
                let center = PlanePoint::new(rng.random_range(-lim..=lim), rng.random_range(-lim..=lim));
                FieldParams::RadialBump { center, radius, alpha: amp(rng, 1.0), beta: amp(rng, 1.0) }
            }
        }
    }
}

impl DeformationField {
    pub fn sample(params: FieldParams, n: usize) -> Result<Self> {
        if n < 16 {
            return Err(Error::Config(format!("deformation grid needs N ≥ 16, got {n}")));
        }
        let half_width = 1.0;
        let h = 2.0 * half_width / (n - 1) as f64;
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = PlanePoint::new(-half_width + j as f64 * h, -half_width + i as f64 * h);
                values.push(params.evaluate(z));
            }
        }
        let mut field = Self { n, half_width, values, params, lipschitz: 0.0 };
        field.lipschitz = field
            .jacobians()
            .iter()
            .map(|m| m.norm())
            .fold(0.0, f64::max);
        if !field.lipschitz.is_finite() {
            return Err(Error::NonFinite("deformation Jacobian".into()));
        }
        Ok(field)
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.n - 1) as f64
    }

    /// Centred-difference Jacobians [[u_x, u_y], [v_x, v_y]]; zero on the
    /// outermost ring where the field vanishes.
    pub fn jacobians(&self) -> Vec<Matrix2> {
        let n = self.n;
        let inv = 0.5 / self.spacing();
        let at = |i: usize, j: usize| self.values[i * n + j];
        let mut out = vec![Matrix2::ZERO; n * n];
        for i in 1..n - 1 {
            for j in 1..n - 1 {
                let fx = (at(i, j + 1) - at(i, j - 1)) * inv;
                let fy = (at(i + 1, j) - at(i - 1, j)) * inv;
                out[i * n + j] = Matrix2::new(fx.re, fy.re, fx.im, fy.im);
            }
        }
        out
    }
}

/// Mean of Ψ(base + Df) − Ψ(base) over Ω = [−1, 1]².
pub fn quasiconvexity_functional(field: &DeformationField, base: Matrix2, ctx: &ExponentContext) -> f64 {
    let psi0 = eval_psi_u(base, ctx);
    let sum: f64 = field
        .jacobians()
        .iter()
        .map(|&m| eval_psi_u(base + m, ctx) - psi0)
        .sum();
    sum / (field.n * field.n) as f64
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiconvexityReport {
    pub p: f64,
    pub base: Matrix2,
    pub trials: usize,
    pub resolution: usize,
    pub min_value: f64,
    pub minimizer: FieldParams,
    /// Q of the minimiser re-evaluated at doubled resolution.
    pub reverified_value: f64,
    /// True only if the minimum stays below −tolerance at both resolutions.
    pub violation_candidate: bool,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuasiconvexityConfig {
    pub trials: usize,
    pub seed: u64,
    pub blocks: usize,
    pub resolution: usize,
    pub tolerance: f64,
}

impl QuasiconvexityConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self { trials, seed, blocks: 8, resolution: 64, tolerance: 1e-6 }
    }
}

/// Random search for deformations with Q(f) < 0. A negative minimum is
/// re-evaluated at twice the resolution before it is flagged; a flag is a
/// candidate for further study, not a disproof.
pub fn quasiconvexity_probe(
    ctx: &ExponentContext,
    base: Matrix2,
    family: DeformationFamily,
    cfg: &QuasiconvexityConfig,
) -> Result<QuasiconvexityReport> {
    if cfg.trials == 0 || cfg.blocks == 0 {
        return Err(Error::Config("trials and blocks must be positive".into()));
    }
    let partials: Vec<Result<(f64, FieldParams)>> = (0..cfg.blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = substream(cfg.seed, b as u64);
            let mut best = (f64::INFINITY, FieldParams::Zero);
            for _ in 0..strided_count(cfg.trials, cfg.blocks, b) {
                let params = FieldParams::random(family, &mut rng);
                let field = DeformationField::sample(params.clone(), cfg.resolution)?;
                let q = quasiconvexity_functional(&field, base, ctx);
                if q < best.0 {
                    best = (q, params);
                }
            }
            Ok(best)
        })
        .collect();
    let mut best = (f64::INFINITY, FieldParams::Zero);
    for p in partials {
        let p = p?;
        if p.0 < best.0 {
            best = p;
        }
    }
    let fine = DeformationField::sample(best.1.clone(), 2 * cfg.resolution)?;
    let reverified = quasiconvexity_functional(&fine, base, ctx);
    Ok(QuasiconvexityReport {
        p: ctx.p,
        base,
        trials: cfg.trials,
        resolution: cfg.resolution,
        min_value: best.0,
        minimizer: best.1,
        reverified_value: reverified,
        violation_candidate: best.0 < -cfg.tolerance && reverified < -cfg.tolerance,
    })
}

/// (∫U(f, 2R₁R₂f) dx, ∫U(f, (R₁² − R₂²)f) dx) for a planar field, with
/// field values read as points of the plane.
pub fn riesz_integrand_probe(f: &ComplexField, ctx: &ExponentContext) -> Result<(f64, f64)> {
    let grid = f.grid;
    if grid.dim != 2 {
        return Err(Error::Config("the Riesz integrand probe is planar".into()));
    }
    let engine = FftEngine::new(grid);
    let r12 = symbol_second_riesz(grid, 0, 1)?;
    let mixed = r12.scale(Complex64::new(2.0, 0.0));
    let one = Complex64::new(1.0, 0.0);
    let diff = MultiplierSymbolGrid::combine(&[
        (one, &symbol_second_riesz(grid, 0, 0)?),
        (-one, &symbol_second_riesz(grid, 1, 1)?),
    ])?;
    let integral = |m: &MultiplierSymbolGrid| -> Result<f64> {
        let g = engine.apply(f, m)?;
        let s: f64 = f
            .data
            .par_iter()
            .zip(&g.data)
            .map(|(a, b)| eval_u(PlanePoint::from(*a), PlanePoint::from(*b), ctx))
            .sum();
        Ok(s * f.dx())
    };
    Ok((integral(&mixed)?, integral(&diff)?))
}

//! Lower bounds for multiplier norms on L^p from random test fields.

use super::{lp_norm, ComplexField, FftEngine, FrequencyGrid, MultiplierSymbolGrid};
use crate::error::{Error, Result};
use crate::rng::{strided_count, substream};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Families of test fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ProbeFamily {
    /// Sums of one to three Gaussian bumps, mean removed.
    Bumps,
    /// Random trigonometric polynomials with wavenumbers up to `max_wavenumber`.
    BandLimited { max_wavenumber: i64 },
    /// ∂̄f for Lehto-type maps f (see [`lehto_test_field`]) with θ drawn
    /// from [theta_min, theta_max].
    LehtoType { theta_min: f64, theta_max: f64, p: f64, log_range: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TestField {
    Bumps { bumps: Vec<(f64, f64, f64, Complex64)> },
    BandLimited { coefficients: Vec<(i64, i64, Complex64)> },
    LehtoType { theta: f64, p: f64, log_range: f64, outer_ratio: f64 },
}

/// Sampled Lehto-type field: `input` = ∂̄f and `target` = ∂f in the
/// standard Wirtinger normalisation, where, in units u = (z − c)/ρ with c
/// the box centre and ρ = L/(2.2 R),
///
/// - f = κu for |u| < e^{−log_range} (holomorphic cap, ∂̄f = 0),
/// - f = (1 − R^{−2}) u|u|^{−2θ/p} up to |u| = 1,
/// - f = 1/ū − u/R² up to |u| = R,
/// - f = 0 beyond,
///
/// with κ fixed by continuity. Since f is continuous and compactly
/// supported, the Beurling transform maps `input` to `target` exactly.
pub fn lehto_test_field(
    grid: FrequencyGrid,
    theta: f64,
    p: f64,
    log_range: f64,
    outer_ratio: f64,
) -> Result<(ComplexField, ComplexField)> {
    if grid.dim != 2 {
        return Err(Error::Config("Lehto-type fields are planar".into()));
    }
    if !(theta > 0.0 && theta < 1.0 && p > 1.0 && log_range > 0.0 && outer_ratio > 1.0) {
        return Err(Error::Config("Lehto-type field parameters out of range".into()));
    }
    let a = theta / p;
    let big = outer_ratio;
    let shrink = 1.0 - 1.0 / (big * big);
    let eps = (-log_range).exp();
    let rho = grid.box_length / (2.2 * big);
    let centre = 0.5 * grid.box_length;
    let eval = |x: &[f64]| -> (Complex64, Complex64) {
        let u = Complex64::new(x[0] - centre, x[1] - centre) / rho;
        let r = u.norm();
        if r < eps {
            (Complex64::new(0.0, 0.0), Complex64::from(shrink * eps.powf(-2.0 * a)))
        } else if r < 1.0 {
            let s = shrink * r.powf(-2.0 * a);
            let phase = u / u.conj();
            (-phase * (a * s), Complex64::from((1.0 - a) * s))
        } else if r < big {
            let ub = u.conj();
            (-1.0 / (ub * ub), Complex64::from(-1.0 / (big * big)))
        } else {
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
        }
    };
    let input = ComplexField::from_fn(grid, |x| eval(x).0);
    let target = ComplexField::from_fn(grid, |x| eval(x).1);
    Ok((input, target))
}

const LEHTO_OUTER_RATIO: f64 = 4.0;

impl TestField {
    pub fn sample(&self, grid: FrequencyGrid) -> Result<ComplexField> {
        if grid.dim != 2 {
            return Err(Error::Config("probe fields are planar".into()));
        }
        let l = grid.box_length;
        Ok(match self {
            TestField::Bumps { bumps } => {
                let mut f = ComplexField::from_fn(grid, |x| {
                    bumps
                        .iter()
                        .map(|&(cx, cy, s, amp)| {
                            let d2 = (x[0] - cx).powi(2) + (x[1] - cy).powi(2);
                            amp * (-d2 / (2.0 * s * s)).exp()
                        })
                        .sum()
                });
                f.subtract_mean();
                f
            }
            TestField::BandLimited { coefficients } => ComplexField::from_fn(grid, |x| {
                coefficients
                    .iter()
                    .map(|&(k1, k2, c)| c * Complex64::from_polar(1.0, -2.0 * PI * (k1 as f64 * x[0] + k2 as f64 * x[1]) / l))
                    .sum()
            }),
            TestField::LehtoType { theta, p, log_range, outer_ratio } => {
                lehto_test_field(grid, *theta, *p, *log_range, *outer_ratio)?.0
            }
        })
    }

    fn random(family: &ProbeFamily, grid: FrequencyGrid, rng: &mut ChaCha8Rng) -> Self {
        let l = grid.box_length;
        let amp = |rng: &mut ChaCha8Rng| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        match *family {
            ProbeFamily::Bumps => {
                let n = rng.random_range(1..=3);
                let bumps = (0..n)
                    .map(|_| {
                        let cx = rng.random_range(0.3 * l..0.7 * l);
                        let cy = rng.random_range(0.3 * l..0.7 * l);
                        let s = rng.random_range(l / 48.0..l / 16.0);
                        (cx, cy, s, amp(rng))
                    })
                    .collect();
                TestField::Bumps { bumps }
            }
            ProbeFamily::BandLimited { max_wavenumber } => {
                let k = max_wavenumber.clamp(1, grid.size as i64 / 2 - 1);
                let terms = rng.random_range(1..=6);
                let coefficients = (0..terms)
                    .map(|_| {
                        let (mut k1, mut k2) = (0, 0);
                        while k1 == 0 && k2 == 0 {
                            k1 = rng.random_range(-k..=k);
                            k2 = rng.random_range(-k..=k);
                        }
                        (k1, k2, amp(rng))
                    })
                    .collect();
                TestField::BandLimited { coefficients }
            }
            ProbeFamily::LehtoType { theta_min, theta_max, p, log_range } => TestField::LehtoType {
                theta: if theta_max > theta_min { rng.random_range(theta_min..=theta_max) } else { theta_min },
                p,
                log_range,
                outer_ratio: LEHTO_OUTER_RATIO,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub trials: usize,
    pub seed: u64,
    pub blocks: usize,
    pub family: ProbeFamily,
    /// Theoretical upper bound for the operator norm, if known.
    pub ceiling: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeReport {
    pub p: f64,
    pub trials: usize,
    pub max_ratio: f64,
    pub ceiling: Option<f64>,
    /// True if some observed ratio exceeded the ceiling.
    pub exceeded_ceiling: bool,
    pub best_field: Option<TestField>,
}

/// Largest ‖T_m f‖_p / ‖f‖_p over random test fields.
pub fn operator_ratio_probe(m: &MultiplierSymbolGrid, p: f64, cfg: &ProbeConfig) -> Result<ProbeReport> {
    if cfg.trials == 0 || cfg.blocks == 0 {
        return Err(Error::Config("trials and blocks must be positive".into()));
    }
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("probe needs p ≥ 1, got {p}")));
    }
    let grid = m.grid;
    let engine = FftEngine::new(grid);
    let partials: Vec<Result<(f64, Option<TestField>)>> = (0..cfg.blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = substream(cfg.seed, b as u64);
            let mut best = (0.0, None);
            for _ in 0..strided_count(cfg.trials, cfg.blocks, b) {
                let params = TestField::random(&cfg.family, grid, &mut rng);
                let f = params.sample(grid)?;
                let denom = lp_norm(&f, p)?;
                if denom == 0.0 {
                    continue;
                }
                let ratio = lp_norm(&engine.apply(&f, m)?, p)? / denom;
                if ratio > best.0 {
                    best = (ratio, Some(params));
                }
            }
            Ok(best)
        })
        .collect();
    let mut best: (f64, Option<TestField>) = (0.0, None);
    for part in partials {
        let part = part?;
        if part.0 > best.0 {
            best = part;
        }
    }
    let exceeded = cfg.ceiling.is_some_and(|c| best.0 > c);
    Ok(ProbeReport { p, trials: cfg.trials, max_ratio: best.0, ceiling: cfg.ceiling, exceeded_ceiling: exceeded, best_field: best.1 })
}

//! Monte Carlo estimate of the space-time projection S_A f on the unit-cell
//! torus.
//!
//! With V(x, τ) the heat extension of f (generator ½Δ, so the symbol is
//! e^{−2π²τ|ξ|²}) and B a Brownian motion started uniformly on the torus,
//! the Itô integral N_T = ∫₀^T A∇V(B_s, T − s)·dB_s satisfies
//! E[N_T | B_T = x] = S_A f(x), whose symbol is
//! (Aξ·ξ)/|ξ|² · (1 − e^{−4π²T|ξ|²}).
//!
//! The estimator runs the Euler sum on a geometric grid of times-to-go,
//! precomputes A∇V at every grid time on a spectrally upsampled lattice,
//! evaluates it by bilinear interpolation, and averages N_T over the cell
//! nearest to B_T.
//!
//! A left-point Euler step from time-to-go τ to τ − Δτ contributes
//! 4π²(Aξ·ξ)Δτ e^{−4π²|ξ|²τ} to the projected symbol, the smallest value
//! of the continuous integrand on that step, so the estimate is biased low
//! by roughly 2π²|ξ|²Δτ per step. [`StepRule::Matched`] multiplies the heat
//! factor by φ(4π²|ξ|²Δτ), φ(z) = (e^z − 1)/z, which makes every step
//! contribute exactly its continuous-time share.

use crate::error::{Error, Result};
use crate::multiplier::{apply_symbol, ComplexField, FftEngine, FrequencyGrid, MultiplierSymbolGrid};
use crate::rng::{block_range, substream};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRule {
    /// Plain Euler: the integrand at the start of each step.
    LeftPoint,
    /// Euler with step-matched heat weights.
    Matched,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeSpec {
    pub n_paths: usize,
    pub n_steps: usize,
    pub seed: u64,
    pub blocks: usize,
    /// Lattice refinement factor for the gradient ladder (a power of two).
    pub upsample: usize,
    /// Smallest nonzero time-to-go on the geometric grid.
    pub tau_min: f64,
    /// Cells with fewer terminal points are excluded from the error.
    pub min_count: usize,
    pub rule: StepRule,
}

impl SpacetimeSpec {
    pub fn new(n_paths: usize, seed: u64) -> Self {
        Self { n_paths, n_steps: 96, seed, blocks: 16, upsample: 4, tau_min: 1e-5, min_count: 16, rule: StepRule::Matched }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeEstimate {
    pub estimated: ComplexField,
    pub exact: ComplexField,
    pub rel_error: f64,
    /// Fraction of cells with at least `min_count` terminal points.
    pub coverage: f64,
    pub starved_cells: usize,
    pub counts: Vec<usize>,
}

/// The time-to-go grid T = τ₀ > τ₁ > … > τ_{n−1} = τ_min > τ_n = 0.
pub fn time_to_go_grid(t_final: f64, tau_min: f64, n_steps: usize) -> Vec<f64> {
    let mut taus: Vec<f64> = if n_steps == 1 {
        vec![t_final]
    } else {
        (0..n_steps)
            .map(|i| t_final * (tau_min / t_final).powf(i as f64 / (n_steps - 1) as f64))
            .collect()
    };
    taus.push(0.0);
    taus
}

/// The symbol of S_A at horizon T.
pub fn spacetime_symbol(grid: FrequencyGrid, a: [Complex64; 4], t_final: f64) -> Result<MultiplierSymbolGrid> {
    if grid.dim != 2 {
        return Err(Error::Config("the space-time projection is implemented in the plane".into()));
    }
    let bound = crate::multiplier::symbols::spectral_norm(&a, 2);
    Ok(MultiplierSymbolGrid::from_fn(grid, Complex64::new(0.0, 0.0), bound, move |xi| {
        let r2 = xi[0] * xi[0] + xi[1] * xi[1];
        let q = a[0] * (xi[0] * xi[0]) + (a[1] + a[2]) * (xi[0] * xi[1]) + a[3] * (xi[1] * xi[1]);
        q / r2 * -(-4.0 * PI * PI * t_final * r2).exp_m1()
    }))
}

/// A∇V(·, τ) for every τ on the ladder, interleaved per fine lattice point.
fn gradient_ladder(
    spectrum: &[Complex64],
    grid: FrequencyGrid,
    fine: FrequencyGrid,
    a: [Complex64; 4],
    taus: &[f64],
    rule: StepRule,
) -> Result<Vec<Vec<[Complex64; 2]>>> {
    let n = grid.size;
    let m = fine.size;
    let half = (n / 2) as i64;
    let engine = FftEngine::new(fine);
    taus.windows(2)
        .map(|w| {
            let (tau, dtau) = (w[0], w[0] - w[1]);
            let mut comps = [vec![Complex64::new(0.0, 0.0); fine.len()], vec![Complex64::new(0.0, 0.0); fine.len()]];
            for (flat, &c) in spectrum.iter().enumerate() {
                let k = grid.wavenumbers(flat);
                // The mean has no gradient; Nyquist modes have no symmetric
                // partner, so their derivative is taken to be zero.
                if flat == 0 || k.iter().any(|&k| k == -half) {
                    continue;
                }
                let xi = [k[0] as f64 / grid.box_length, k[1] as f64 / grid.box_length];
                let r2 = xi[0] * xi[0] + xi[1] * xi[1];
                let c2 = 4.0 * PI * PI * r2;
                let heat = match rule {
                    StepRule::LeftPoint => (-c2 * tau / 2.0).exp(),
                    // e^{−c τ/2} (e^{c Δτ} − 1)/(c Δτ), arranged to avoid overflow.
                    StepRule::Matched => {
                        let z = c2 * dtau;
                        (c2 * (dtau - tau / 2.0)).exp() * -(-z).exp_m1() / z
                    }
                };
                let idx = k[0].rem_euclid(m as i64) as usize * m + k[1].rem_euclid(m as i64) as usize;
                for (j, comp) in comps.iter_mut().enumerate() {
                    comp[idx] = c * heat * Complex64::new(0.0, -2.0 * PI * xi[j]);
                }
            }
            let g0 = engine.inverse(&comps[0])?.data;
            let g1 = engine.inverse(&comps[1])?.data;
            Ok(g0
                .iter()
                .zip(&g1)
                .map(|(&d0, &d1)| [a[0] * d0 + a[1] * d1, a[2] * d0 + a[3] * d1])
                .collect())
        })
        .collect()
}

fn bilinear(level: &[[Complex64; 2]], m: usize, h: f64, x: [f64; 2]) -> [Complex64; 2] {
    let u = x[0] / h;
    let v = x[1] / h;
    let (i0, j0) = (u.floor(), v.floor());
    let (fu, fv) = (u - i0, v - j0);
    let i0 = (i0 as i64).rem_euclid(m as i64) as usize;
    let j0 = (j0 as i64).rem_euclid(m as i64) as usize;
    let i1 = (i0 + 1) % m;
    let j1 = (j0 + 1) % m;
    let w = [(1.0 - fu) * (1.0 - fv), (1.0 - fu) * fv, fu * (1.0 - fv), fu * fv];
    let p = [level[i0 * m + j0], level[i0 * m + j1], level[i1 * m + j0], level[i1 * m + j1]];
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for (wk, pk) in w.iter().zip(&p) {
        out[0] += pk[0] * *wk;
        out[1] += pk[1] * *wk;
    }
    out
}

/// Estimates S_A f by simulation and compares with the exact multiplier.
pub fn spacetime_projection_estimate(
    f: &ComplexField,
    a: [Complex64; 4],
    t_final: f64,
    spec: &SpacetimeSpec,
) -> Result<SpacetimeEstimate> {
    let grid = f.grid;
    if grid.dim != 2 {
        return Err(Error::Config("the space-time projection is implemented in the plane".into()));
    }
    if spec.n_paths == 0 || spec.n_steps == 0 || spec.blocks == 0 {
        return Err(Error::Config("paths, steps and blocks must be positive".into()));
    }
    if !spec.upsample.is_power_of_two() {
        return Err(Error::Config(format!("upsample factor {} must be a power of two", spec.upsample)));
    }
    if !(t_final > 0.0 && t_final.is_finite() && spec.tau_min > 0.0 && spec.tau_min < t_final) {
        return Err(Error::Config("need 0 < tau_min < T".into()));
    }
    let scale = f.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::Degenerate("the input field vanishes".into()));
    }
    if f.mean().norm() > 1e-9 * scale {
        return Err(Error::Config("the input field must have mean zero".into()));
    }

    let spectrum = FftEngine::new(grid).forward(f)?;
    let fine = FrequencyGrid::new(2, grid.size * spec.upsample, grid.box_length)?;
    let taus = time_to_go_grid(t_final, spec.tau_min, spec.n_steps);

    // The martingale starts from a heat extension that must be essentially
    // flat: compare Σ|ξ||f̂| with and without the heat factor at T.
    let (mut grad_t, mut grad_0) = (0.0, 0.0);
    for (flat, c) in spectrum.iter().enumerate() {
        let xi = grid.frequency(flat);
        let r2 = xi[0] * xi[0] + xi[1] * xi[1];
        grad_0 += c.norm() * r2.sqrt();
        grad_t += c.norm() * r2.sqrt() * (-2.0 * PI * PI * t_final * r2).exp();
    }
    if grad_t > 1e-6 * grad_0 {
        return Err(Error::Config(format!("horizon T = {t_final} is too short: the heat extension is not flat")));
    }

    let ladder = gradient_ladder(&spectrum, grid, fine, a, &taus, spec.rule)?;

    let n = grid.size;
    let m = fine.size;
    let len = grid.box_length;
    let h_fine = fine.spacing();
    let h = grid.spacing();
    let sd: Vec<f64> = taus.windows(2).map(|w| (w[0] - w[1]).sqrt()).collect();

    let partials: Vec<(Vec<Complex64>, Vec<usize>)> = (0..spec.blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = substream(spec.seed, b as u64);
            let mut sums = vec![Complex64::new(0.0, 0.0); grid.len()];
            let mut counts = vec![0usize; grid.len()];
            for _ in block_range(spec.n_paths, spec.blocks, b) {
                let mut x = [rng.random_range(0.0..len), rng.random_range(0.0..len)];
                let mut acc = Complex64::new(0.0, 0.0);
                for (level, &s) in ladder.iter().zip(&sd) {
                    let w = bilinear(level, m, h_fine, x);
                    let d0 = s * rng.sample::<f64, _>(StandardNormal);
                    let d1 = s * rng.sample::<f64, _>(StandardNormal);
                    acc += w[0] * d0 + w[1] * d1;
                    x[0] = (x[0] + d0).rem_euclid(len);
                    x[1] = (x[1] + d1).rem_euclid(len);
                }
                let ci = ((x[0] / h).round() as usize) % n;
                let cj = ((x[1] / h).round() as usize) % n;
                sums[ci * n + cj] += acc;
                counts[ci * n + cj] += 1;
            }
            (sums, counts)
        })
        .collect();

    let mut sums = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut counts = vec![0usize; grid.len()];
    for (s, c) in partials {
        sums.iter_mut().zip(&s).for_each(|(a, b)| *a += b);
        counts.iter_mut().zip(&c).for_each(|(a, b)| *a += b);
    }

    let exact = apply_symbol(f, &spacetime_symbol(grid, a, t_final)?)?;
    let mut estimated = vec![Complex64::new(0.0, 0.0); grid.len()];
    let (mut num, mut den, mut covered) = (0.0, 0.0, 0usize);
    for i in 0..grid.len() {
        if counts[i] >= spec.min_count.max(1) {
            estimated[i] = sums[i] / counts[i] as f64;
            num += (estimated[i] - exact.data[i]).norm_sqr();
            den += exact.data[i].norm_sqr();
            covered += 1;
        }
    }
    if covered == 0 {
        return Err(Error::Degenerate("no cell reached the minimum path count".into()));
    }
    let rel_error = if den > 0.0 { (num / den).sqrt() } else { num.sqrt() };
    Ok(SpacetimeEstimate {
        estimated: ComplexField::new(grid, estimated)?,
        exact,
        rel_error,
        coverage: covered as f64 / grid.len() as f64,
        starved_cells: grid.len() - covered,
        counts,
    })
}

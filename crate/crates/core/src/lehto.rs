//! Lehto's extremal maps f_θ(z) = z|z|^{−2θ/p} inside the unit disc and
//! 1/z̄ outside, and the integrals of U and Ũ along their derivatives.
//!
//! Radial integrals use the standard Wirtinger operators
//! ∂ = ½(∂₁ − i∂₂), ∂̄ = ½(∂₁ + i∂₂). In that normalisation
//!
//! - inside: |∂f| = (1 − θ/p) r^{−2θ/p}, |∂̄f| = (θ/p) r^{−2θ/p},
//! - outside: ∂f = 0, |∂̄f| = r^{−2}.
//!
//! [`lehto_wirtinger`] returns the unnormalised pair ∂₁ ± i∂₂, which is twice
//! the standard one. The norm ratio does not see the factor and ∫U vanishes
//! in both, but ∫Ũ is not homogeneous under it; its closed form
//! π[p(1−1/p)^{p−1} − (p−1)^{p−1}] holds in the standard normalisation.

use crate::constants::ExponentContext;
use crate::error::{domain, Result};
use crate::functions::{eval_u, eval_u_min, PlanePoint};
use crate::quadrature::{integrate_to_infinity, QuadOptions};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LehtoParams {
    pub theta: f64,
    pub ctx: ExponentContext,
}

impl LehtoParams {
    pub fn new(theta: f64, p: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return domain(format!("theta must lie in (0, 1), got {theta}"));
        }
        let ctx = ExponentContext::new(p)?;
        if p <= 2.0 {
            return domain(format!("Lehto integrals are computed for p > 2, got {p}"));
        }
        Ok(Self { theta, ctx })
    }

    fn a(&self) -> f64 {
        self.theta / self.ctx.p
    }
}

/// f_θ(z).
pub fn lehto_value(params: &LehtoParams, z: PlanePoint) -> PlanePoint {
    let r2 = z.norm_sqr();
    if r2 == 0.0 {
        PlanePoint::ZERO
    } else if r2 < 1.0 {
        z * r2.powf(-params.a())
    } else {
        PlanePoint::new(z.re / r2, z.im / r2)
    }
}

fn complex_mul(a: PlanePoint, b: PlanePoint) -> PlanePoint {
    PlanePoint::new(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)
}

/// (∂̄f_θ, ∂f_θ) with ∂ = ∂₁ − i∂₂ and ∂̄ = ∂₁ + i∂₂.
pub fn lehto_wirtinger(params: &LehtoParams, z: PlanePoint) -> Result<(PlanePoint, PlanePoint)> {
    let r2 = z.norm_sqr();
    if r2 == 0.0 {
        return domain("Lehto derivatives are singular at z = 0");
    }
    let a = params.a();
    if r2 < 1.0 {
        let scale = r2.powf(-a);
        // z / z̄ = z² / |z|²
        let phase = complex_mul(z, z) * (1.0 / r2);
        let dbar = phase * (-2.0 * a * scale);
        let d = PlanePoint::new(2.0 * (1.0 - a) * scale, 0.0);
        Ok((dbar, d))
    } else {
        // ∂̄(1/z̄) = −1/z̄² = −z²/|z|⁴
        let dbar = complex_mul(z, z) * (-2.0 / (r2 * r2));
        Ok((dbar, PlanePoint::ZERO))
    }
}

#[derive(Debug, Clone, Copy)]
struct Radial {
    value: f64,
    error: f64,
}

/// Standard-normalisation moduli (|∂̄f|, |∂f|) at radius e^{log_r}, each
/// multiplied by r^{2/p}. For p-homogeneous g this turns g(|∂̄f|, |∂f|)·r²
/// into a single evaluation that neither overflows nor underflows.
fn weighted_moduli(params: &LehtoParams, log_r: f64) -> (f64, f64) {
    let a = params.a();
    let w = 2.0 / params.ctx.p;
    if log_r < 0.0 {
        let s = ((w - 2.0 * a) * log_r).exp();
        (a * s, (1.0 - a) * s)
    } else {
        (((w - 2.0) * log_r).exp(), 0.0)
    }
}

/// 2π ∫₀^∞ g(|∂̄f|(r), |∂f|(r)) r dr for p-homogeneous g, split at r = 1.
/// Each piece is written in log-radius and rescaled by its decay rate so
/// the semi-infinite map sees an O(1) exponential.
fn radial_integral(params: &LehtoParams, g: impl Fn(f64, f64) -> f64, opts: QuadOptions) -> Result<Radial> {
    let p = params.ctx.p;
    let inner_rate = 2.0 * (1.0 - params.theta);
    let outer_rate = 2.0 * p - 2.0;
    let inner = integrate_to_infinity(
        |u: f64| {
            let (db, d) = weighted_moduli(params, -u / inner_rate);
            g(db, d) / inner_rate
        },
        0.0,
        opts,
    )?;
    let outer = integrate_to_infinity(
        |u: f64| {
            let (db, d) = weighted_moduli(params, u / outer_rate);
            g(db, d) / outer_rate
        },
        0.0,
        opts,
    )?;
    Ok(Radial {
        value: 2.0 * PI * (inner.value + outer.value),
        error: 2.0 * PI * (inner.error + outer.error),
    })
}

/// Integral at two tolerance levels; the error is the larger of the fine
/// estimate's own bound and the change between levels.
fn refined(params: &LehtoParams, g: impl Fn(f64, f64) -> f64 + Copy) -> Result<Radial> {
    let coarse = radial_integral(params, g, QuadOptions::with_tol(1e-9, 1e-8))?;
    let fine = radial_integral(params, g, QuadOptions::with_tol(1e-14, 1e-13))?;
    Ok(Radial { value: fine.value, error: fine.error.max((fine.value - coarse.value).abs()) })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LehtoRatio {
    pub numeric: f64,
    pub closed_form: f64,
    pub error: f64,
}

/// ‖∂f_θ‖_p / ‖∂̄f_θ‖_p by quadrature, next to
/// ((p−1)(p−θ)^p / ((p−1)θ^p + (1−θ)p^p))^{1/p}.
pub fn lehto_ratio(params: &LehtoParams) -> Result<LehtoRatio> {
    let p = params.ctx.p;
    let t = params.theta;
    let num = refined(params, |_, d| d.powf(p))?;
    let den = refined(params, |db, _| db.powf(p))?;
    let ratio_p = num.value / den.value;
    let numeric = ratio_p.powf(1.0 / p);
    let rel = num.error / num.value + den.error / den.value;
    let closed_form =
        ((p - 1.0) * (p - t).powf(p) / ((p - 1.0) * t.powf(p) + (1.0 - t) * p.powf(p))).powf(1.0 / p);
    Ok(LehtoRatio { numeric, closed_form, error: numeric * rel / p })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LehtoIntegral {
    pub value: f64,
    pub error: f64,
    /// ∫|U(∂̄f, ∂f)| dm, the scale against which `value` is judged.
    pub abs_mass: f64,
}

/// ∫_ℂ U(∂̄f_θ, ∂f_θ) dm, which vanishes for every θ.
pub fn integral_u_lehto(params: &LehtoParams) -> Result<LehtoIntegral> {
    let ctx = params.ctx;
    let u = move |db: f64, d: f64| eval_u(PlanePoint::new(db, 0.0), PlanePoint::new(d, 0.0), &ctx);
    let signed = refined(params, u)?;
    let mass = refined(params, move |db, d| u(db, d).abs())?;
    Ok(LehtoIntegral { value: signed.value, error: signed.error, abs_mass: mass.value })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LehtoComparison {
    pub numeric: f64,
    pub closed_form: f64,
    pub error: f64,
}

/// π[p(1 − 1/p)^{p−1} − (p−1)^{p−1}].
pub fn umin_closed_form(p: f64) -> f64 {
    PI * (p * (1.0 - 1.0 / p).powf(p - 1.0) - (p - 1.0).powf(p - 1.0))
}

/// ∫_ℂ Ũ(∂̄f_θ, ∂f_θ) dm next to its θ-independent closed form.
pub fn integral_umin_lehto(params: &LehtoParams) -> Result<LehtoComparison> {
    let ctx = params.ctx;
    let r = refined(params, move |db, d| {
        eval_u_min(PlanePoint::new(db, 0.0), PlanePoint::new(d, 0.0), &ctx)
    })?;
    Ok(LehtoComparison { numeric: r.value, closed_form: umin_closed_form(ctx.p), error: r.error })
}

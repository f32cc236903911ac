//! Sharp constants of Burkholder-type inequalities.

use crate::error::{domain, Result};
use crate::quadrature::{integrate_to_infinity, QuadOptions};
use crate::special::{catalan, dirichlet_beta, gamma};
use serde::Serialize;
use std::f64::consts::PI;

/// An exponent `p > 1` together with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentContext {
    pub p: f64,
    /// max(p, q)
    pub p_star: f64,
    /// conjugate exponent, 1/p + 1/q = 1
    pub q: f64,
    /// p (1 − 1/p*)^{p−1}, the normalisation of Burkholder's U
    pub alpha_p: f64,
}

impl ExponentContext {
    pub fn new(p: f64) -> Result<Self> {
        let p_star = p_star(p)?;
        let q = p / (p - 1.0);
        let alpha_p = p * (1.0 - 1.0 / p_star).powf(p - 1.0);
        Ok(Self { p, p_star, q, alpha_p })
    }

    /// p* − 1, the sharp martingale transform constant.
    pub fn transform_constant(&self) -> f64 {
        self.p_star - 1.0
    }
}

fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        domain(format!("exponent must satisfy p > 1, got {p}"))
    }
}

pub fn p_star(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(p.max(p / (p - 1.0)))
}

/// cot(π / 2p*), the sharp constant for orthogonal pairs.
pub fn cot_constant(p: f64) -> Result<f64> {
    let ps = p_star(p)?;
    Ok(1.0 / (PI / (2.0 * ps)).tan())
}

/// csc(π / 2p*).
pub fn csc_constant(p: f64) -> Result<f64> {
    let ps = p_star(p)?;
    Ok(1.0 / (PI / (2.0 * ps)).sin())
}

/// Davis' weak-type (1,1) constant π² / (8 β(2)).
pub fn davis_d1() -> f64 {
    PI * PI / (8.0 * catalan())
}

/// The weak-type constant D_p for 1 ≤ p ≤ 2,
///
/// D_p^{-1} = (1/π) ∫ |(2/π) log|t||^p / (1 + t²) dt.
///
/// The four pieces (−∞,−1), (−1,0), (0,1), (1,∞) coincide under t → −t and
/// t → 1/t; the remaining piece is mapped by t = e^{−s} to a semi-infinite
/// integral with a smooth integrand.
pub fn weak_dp(p: f64) -> Result<f64> {
    if !(1.0..=2.0).contains(&p) {
        return domain(format!(
            "D_p is known only for 1 ≤ p ≤ 2 (the range 2 < p < ∞ is open), got {p}"
        ));
    }
    let opts = QuadOptions::with_tol(1e-15, 1e-13);
    let r = integrate_to_infinity(
        |s: f64| {
            if s == 0.0 {
                0.0
            } else {
                s.powf(p) * (-s).exp() / (1.0 + (-2.0 * s).exp())
            }
        },
        0.0,
        opts,
    )?;
    let integral = 4.0 / PI * (2.0 / PI).powf(p) * r.value;
    Ok(1.0 / integral)
}

/// C_{p,∞}: equal to 1 for 1 < p ≤ 2, and for p > 2
/// (2^{p+2} Γ(p+1) β(p+1) / π^{p+1})^{1/p}.
pub fn osekowski_cpinf(p: f64) -> Result<f64> {
    check_p(p)?;
    if p <= 2.0 {
        return Ok(1.0);
    }
    let s = 2f64.powf(p + 2.0) * gamma(p + 1.0) * dirichlet_beta(p + 1.0) / PI.powf(p + 1.0);
    Ok(s.powf(1.0 / p))
}

/// C_{1,p} = C_{p/(p−1),∞}.
pub fn osekowski_c1p(p: f64) -> Result<f64> {
    check_p(p)?;
    osekowski_cpinf(p / (p - 1.0))
}

fn choi_log() -> f64 {
    ((1.0 + (-2f64).exp()) / 2.0).ln()
}

/// The coefficient α₂ of the 1/p term in Choi's expansion.
pub fn choi_alpha2() -> f64 {
    let l = choi_log();
    let e = (-2f64).exp();
    let r = e / (1.0 + e);
    l * l + 0.5 * l - 2.0 * r * r
}

/// Choi's approximation p/2 + ½ log((1+e^{−2})/2) + α₂/p to the sharp
/// constant for transforms with predictable values in [0, 1].
pub fn choi_cp_approx(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(p / 2.0 + 0.5 * choi_log() + choi_alpha2() / p)
}

/// Rigorous bracket max(1, p*/2 − 1) ≤ c_p ≤ p*/2.
pub fn choi_bracket(p: f64) -> Result<(f64, f64)> {
    let ps = p_star(p)?;
    Ok(((ps / 2.0 - 1.0).max(1.0), ps / 2.0))
}

/// Weak-type constant for differentially subordinate pairs:
/// 2/Γ(p+1) on [1, 2] and p^{p−1}/2 beyond.
pub fn weak_subordinate_constant(p: f64) -> Result<f64> {
    if !(p.is_finite() && p >= 1.0) {
        return domain(format!("weak-type constant needs p ≥ 1, got {p}"));
    }
    Ok(if p <= 2.0 { 2.0 / gamma(p + 1.0) } else { p.powf(p - 1.0) / 2.0 })
}

const SIGMA_NODES: usize = 65_536;

/// σ(p) = ((1/2π) ∫₀^{2π} |cos θ|^p dθ)^{−1/p} by the periodic trapezoid rule.
pub fn sigma_p(p: f64) -> Result<f64> {
    if !(p.is_finite() && p > 0.0) {
        return domain(format!("sigma_p needs p > 0, got {p}"));
    }
    let h = 2.0 * PI / SIGMA_NODES as f64;
    let mean = (0..SIGMA_NODES)
        .map(|j| (j as f64 * h).cos().abs().powf(p))
        .sum::<f64>()
        / SIGMA_NODES as f64;
    Ok(mean.powf(-1.0 / p))
}

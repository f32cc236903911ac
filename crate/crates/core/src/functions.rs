//! Burkholder's special functions and the matrix pullback Ψ_U.

use crate::constants::ExponentContext;
use crate::error::{domain, Error, Result};
use crate::rng::substream;
use rand::Rng;
use rayon::prelude::*;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

/// A point of ℂ ≅ ℝ².
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlanePoint {
    pub re: f64,
    pub im: f64,
}

impl PlanePoint {
    pub const ZERO: PlanePoint = PlanePoint { re: 0.0, im: 0.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn dot(self, other: Self) -> f64 {
        self.re * other.re + self.im * other.im
    }

    /// Unit vector in the direction of `self`; zero stays zero.
    pub fn unit(self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            self
        } else {
            self * (1.0 / n)
        }
    }

    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.re - s * self.im, s * self.re + c * self.im)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl From<Complex64> for PlanePoint {
    fn from(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }
}

impl From<PlanePoint> for Complex64 {
    fn from(v: PlanePoint) -> Self {
        Complex64::new(v.re, v.im)
    }
}

impl Add for PlanePoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for PlanePoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul<f64> for PlanePoint {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.re * s, self.im * s)
    }
}

impl Neg for PlanePoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

/// A real 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Matrix2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Matrix2 {
    pub const ZERO: Matrix2 = Matrix2 { a: 0.0, b: 0.0, c: 0.0, d: 0.0 };
    pub const IDENTITY: Matrix2 = Matrix2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// The rank-one matrix h ⊗ k with entries h_i k_j.
    pub fn outer(h: PlanePoint, k: PlanePoint) -> Self {
        Self::new(h.re * k.re, h.re * k.im, h.im * k.re, h.im * k.im)
    }

    pub fn det(self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Frobenius norm.
    pub fn norm(self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }
}

impl Add for Matrix2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Matrix2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Mul<f64> for Matrix2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
}

/// V(x, y) = |y|^p − (p*−1)^p |x|^p.
pub fn eval_v(x: PlanePoint, y: PlanePoint, ctx: &ExponentContext) -> f64 {
    let p = ctx.p;
    y.norm().powf(p) - (ctx.p_star - 1.0).powf(p) * x.norm().powf(p)
}

/// U(x, y) = α_p (|y| − (p*−1)|x|)(|x| + |y|)^{p−1}.
pub fn eval_u(x: PlanePoint, y: PlanePoint, ctx: &ExponentContext) -> f64 {
    let (nx, ny) = (x.norm(), y.norm());
    ctx.alpha_p * (ny - (ctx.p_star - 1.0) * nx) * (nx + ny).powf(ctx.p - 1.0)
}

/// The least biconcave majorant Ũ of V: equal to V on one side of the cone
/// |y| = (p*−1)|x| and to U on the other, with the sides interchanged
/// for p < 2.
pub fn eval_u_min(x: PlanePoint, y: PlanePoint, ctx: &ExponentContext) -> f64 {
    let inside = y.norm() <= (ctx.p_star - 1.0) * x.norm();
    if inside == (ctx.p >= 2.0) {
        eval_v(x, y, ctx)
    } else {
        eval_u(x, y, ctx)
    }
}

/// Pichorides' function −tan(π/2p) R^p cos(pθ) with |x| = R cos θ,
/// y = R sin θ, defined for 1 < p ≤ 2.
pub fn eval_pichorides(x: f64, y: f64, ctx: &ExponentContext) -> Result<f64> {
    let p = ctx.p;
    if p > 2.0 {
        return domain(format!("Pichorides' function is used for 1 < p ≤ 2, got {p}"));
    }
    let r = x.hypot(y);
    let theta = y.atan2(x.abs());
    Ok(-(PI / (2.0 * p)).tan() * r.powf(p) * (p * theta).cos())
}

/// The majorised function |y|^p − sec^p(π/2p)|x|^p paired with
/// [`eval_pichorides`].
pub fn eval_v_pichorides(x: f64, y: f64, ctx: &ExponentContext) -> f64 {
    let p = ctx.p;
    let sec = 1.0 / (PI / (2.0 * p)).cos();
    y.abs().powf(p) - sec.powf(p) * x.abs().powf(p)
}

/// The weak-type function W(x, y) = 1{|y| ≥ 1} − c^p |x|^p.
pub fn eval_weaktype_w(x: PlanePoint, y: PlanePoint, c: f64, p: f64) -> f64 {
    let base = -(c * x.norm()).powf(p);
    if y.norm() >= 1.0 {
        1.0 + base
    } else {
        base
    }
}

/// Γ(A) = (z, w) with z = (a+d, c−b) and w = (a−d, c+b). For A = Df these
/// are ∂f and ∂̄f in the convention ∂ = ∂₁ − i∂₂, ∂̄ = ∂₁ + i∂₂.
pub fn gamma_map(m: Matrix2) -> (PlanePoint, PlanePoint) {
    (PlanePoint::new(m.a + m.d, m.c - m.b), PlanePoint::new(m.a - m.d, m.c + m.b))
}

/// Ψ_U(A) = −U(w, z) where (z, w) = Γ(A), so that Ψ_U(Df) = −U(∂̄f, ∂f).
pub fn eval_psi_u(m: Matrix2, ctx: &ExponentContext) -> f64 {
    let (z, w) = gamma_map(m);
    -eval_u(w, z, ctx)
}

/// Ψ_U written out through the entries of A:
/// −α_p (√((a+d)² + (c−b)²) − (p*−1)√((a−d)² + (c+b)²)) (… + …)^{p−1}.
pub fn eval_psi_u_explicit(m: Matrix2, ctx: &ExponentContext) -> f64 {
    let Matrix2 { a, b, c, d } = m;
    let rz = ((a + d).powi(2) + (c - b).powi(2)).sqrt();
    let rw = ((a - d).powi(2) + (c + b).powi(2)).sqrt();
    -ctx.alpha_p * (rz - (ctx.p_star - 1.0) * rw) * (rz + rw).powf(ctx.p - 1.0)
}

/// The terms A, B, C in the second derivative of t ↦ U(x + th, y + tk)
/// at t = 0 for p > 2, which is −c_p (A + B + C).
pub fn second_order_terms(
    x: PlanePoint,
    y: PlanePoint,
    h: PlanePoint,
    k: PlanePoint,
    ctx: &ExponentContext,
) -> Result<(f64, f64, f64)> {
    let p = ctx.p;
    let (nx, ny) = (x.norm(), y.norm());
    if nx == 0.0 || ny == 0.0 {
        return domain("second-order terms need |x| > 0 and |y| > 0");
    }
    if p <= 2.0 {
        return domain(format!("second-order terms are stated for p > 2, got {p}"));
    }
    let s = nx + ny;
    let (xu, yu) = (x * (1.0 / nx), y * (1.0 / ny));
    let a = p * (p - 1.0) * (h.norm_sqr() - k.norm_sqr()) * s.powf(p - 2.0);
    let b = p * (p - 2.0) * (k.norm_sqr() - yu.dot(k).powi(2)) / ny * s.powf(p - 1.0);
    let c = p * (p - 1.0) * (p - 2.0) * (xu.dot(h) + yu.dot(k)).powi(2) * nx * s.powf(p - 3.0);
    Ok((a, b, c))
}

/// Counts from [`identity_scan`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub p: f64,
    pub samples: usize,
    /// Points where V ≤ Ũ ≤ U fails.
    pub order_violations: usize,
    /// Points with |y| ≤ |x| where U > 0.
    pub sign_violations: usize,
    /// max |U − V| / (1 + |V|), reported at p = 2 where U = V.
    pub max_p2_gap: Option<f64>,
}

/// Random points (x, y) with log-uniform radii in [10⁻², 10] and uniform
/// angles; every fifth point is placed on the cone |y| = (p*−1)|x| and every
/// fifth on |y| = |x|. Comparisons allow rounding of 1e−12 relative to
/// (|x| + |y|)^p (1 + (p*−1)^p), the size of the terms that cancel on the cone.
/// The p = 2 gap is measured against 1 + |V| and so only stays near machine
/// precision while |x| + |y| is moderate, hence the bounded radii.
pub fn identity_scan(ctx: &ExponentContext, samples: usize, seed: u64, blocks: usize) -> Result<IdentityReport> {
    if samples == 0 || blocks == 0 {
        return Err(Error::Config("samples and blocks must be positive".into()));
    }
    let partials: Vec<(usize, usize, f64)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = substream(seed, b as u64);
            let mut acc = (0, 0, 0.0f64);
            for j in (b..samples).step_by(blocks) {
                let point = |r: f64, rng: &mut rand_chacha::ChaCha8Rng| {
                    let a = rng.random_range(0.0..2.0 * PI);
                    PlanePoint::new(r * a.cos(), r * a.sin())
                };
                let rx = 10f64.powf(rng.random_range(-2.0..1.0));
                let ry = match j % 5 {
                    0 => (ctx.p_star - 1.0) * rx,
                    1 => rx,
                    _ => 10f64.powf(rng.random_range(-2.0..1.0)),
                };
                let x = point(rx, &mut rng);
                let y = point(ry, &mut rng);
                let (v, um, u) = (eval_v(x, y, ctx), eval_u_min(x, y, ctx), eval_u(x, y, ctx));
                // Rounding is relative to the size of the terms, which cancel on the cone.
                let terms = (x.norm() + y.norm()).powf(ctx.p) * (1.0 + (ctx.p_star - 1.0).powf(ctx.p));
                let slack = 1e-12 * terms;
                if v > um + slack || um > u + slack {
                    acc.0 += 1;
                }
                if y.norm() <= x.norm() && u > 0.0 {
                    acc.1 += 1;
                }
                acc.2 = acc.2.max((u - v).abs() / (1.0 + v.abs()));
            }
            acc
        })
        .collect();
    let (mut order, mut sign, mut gap) = (0, 0, 0.0f64);
    for (o, s, g) in partials {
        order += o;
        sign += s;
        gap = gap.max(g);
    }
    Ok(IdentityReport {
        p: ctx.p,
        samples,
        order_violations: order,
        sign_violations: sign,
        max_p2_gap: (ctx.p == 2.0).then_some(gap),
    })
}

//! Lévy multipliers: ratios of (φ, ψ)-transformed symmetric Lévy symbols.
//!
//! For a Gaussian part given by sphere atoms (θᵢ, uᵢ) and jumps (xⱼ, wⱼ),
//!
//! M(ξ) = [Σ wⱼ(1 − cos ξ·xⱼ) φ(xⱼ) + ½ Σ uᵢ |ξ·θᵢ|² ψ(θᵢ)]
//!      / [Σ wⱼ(1 − cos ξ·xⱼ) + ½ Σ uᵢ |ξ·θᵢ|²].
//!
//! For α-stable jumps with angular measure σ, the radial integral
//! ∫₀^∞ (1 − cos(r ξ·θ)) r^{−1−α} dr = c_α |ξ·θ|^α is done in closed form
//! and φ is read as a function of the direction θ.

use super::{FrequencyGrid, MultiplierSymbolGrid};
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::rng::{strided_count, substream};
use crate::special::gamma;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereAtom {
    pub theta: Vec<f64>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpAtom {
    pub x: Vec<f64>,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub enum GaussianPart {
    None,
    /// Symmetric non-negative definite matrix, row-major.
    Matrix(Vec<f64>),
    Atoms(Vec<SphereAtom>),
}

#[derive(Debug, Clone)]
pub enum StableAngular {
    /// Arc-length measure on the unit circle, integrated with Gauss–Legendre
    /// rules of `nodes_per_arc` points on the two arcs where ξ·θ keeps a sign.
    UniformCircle { nodes_per_arc: usize },
    Atoms(Vec<SphereAtom>),
}

#[derive(Debug, Clone)]
pub enum JumpPart {
    None,
    Atoms(Vec<JumpAtom>),
    Stable { alpha: f64, angular: StableAngular },
}

/// A transformation φ or ψ with sup-norm at most one.
#[derive(Clone)]
pub enum Transform {
    Constant(Complex64),
    /// e^{ik·arg x} in the plane.
    AngularCharacter(i32),
    /// One value per atom, in atom order.
    PerAtom(Vec<Complex64>),
    Custom { f: Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>, sup: f64 },
}

impl fmt::Debug for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "Constant({c})"),
            Self::AngularCharacter(k) => write!(f, "AngularCharacter({k})"),
            Self::PerAtom(v) => write!(f, "PerAtom({v:?})"),
            Self::Custom { sup, .. } => write!(f, "Custom {{ sup: {sup} }}"),
        }
    }
}

impl Transform {
    pub fn one() -> Self {
        Self::Constant(Complex64::new(1.0, 0.0))
    }

    fn sup(&self) -> f64 {
        match self {
            Self::Constant(c) => c.norm(),
            Self::AngularCharacter(_) => 1.0,
            Self::PerAtom(v) => v.iter().map(|z| z.norm()).fold(0.0, f64::max),
            Self::Custom { sup, .. } => *sup,
        }
    }

    fn eval(&self, index: Option<usize>, x: &[f64]) -> Result<Complex64> {
        match self {
            Self::Constant(c) => Ok(*c),
            Self::AngularCharacter(k) => {
                if x.len() != 2 {
                    return Err(Error::Config("angular characters need a planar Lévy datum".into()));
                }
                Ok(Complex64::from_polar(1.0, *k as f64 * x[1].atan2(x[0])))
            }
            Self::PerAtom(v) => index
                .and_then(|i| v.get(i).copied())
                .ok_or_else(|| Error::Config("per-atom transform does not cover every atom".into())),
            Self::Custom { f, .. } => Ok(f(x)),
        }
    }
}

/// Lévy datum (drift, Gaussian part, jump part) with transforms φ, ψ.
#[derive(Debug, Clone)]
pub struct LevySpec {
    pub dim: usize,
    /// Drift; symmetric multipliers do not depend on it.
    pub drift: Vec<f64>,
    pub gaussian: GaussianPart,
    pub jumps: JumpPart,
    pub phi: Transform,
    pub psi: Transform,
}

/// c_α = ∫₀^∞ (1 − cos r) r^{−1−α} dr = −Γ(−α) cos(πα/2), with c₁ = π/2.
pub fn stable_constant(alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < 1e-12 {
        PI / 2.0
    } else {
        -gamma(-alpha) * (PI * alpha / 2.0).cos()
    }
}

/// Eigenvalues and unit eigenvectors of a symmetric matrix by cyclic Jacobi
/// rotations.
pub fn symmetric_eigen(a: &[f64], d: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut m = a.to_vec();
    let mut v = vec![0.0; d * d];
    for i in 0..d {
        v[i * d + i] = 1.0;
    }
    for _ in 0..100 {
        let off: f64 = (0..d).flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| m[i * d + j].powi(2)).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = m[p * d + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q * d + q] - m[p * d + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..d {
                    let (mkp, mkq) = (m[k * d + p], m[k * d + q]);
                    m[k * d + p] = c * mkp - s * mkq;
                    m[k * d + q] = s * mkp + c * mkq;
                }
                for k in 0..d {
                    let (mpk, mqk) = (m[p * d + k], m[q * d + k]);
                    m[p * d + k] = c * mpk - s * mqk;
                    m[q * d + k] = s * mpk + c * mqk;
                }
                for k in 0..d {
                    let (vkp, vkq) = (v[k * d + p], v[k * d + q]);
                    v[k * d + p] = c * vkp - s * vkq;
                    v[k * d + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..d).map(|i| m[i * d + i]).collect();
    let vectors = (0..d).map(|j| (0..d).map(|k| v[k * d + j]).collect()).collect();
    (values, vectors)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A validated datum reduced to atoms and a stable rule.
struct Prepared {
    sphere: Vec<(Vec<f64>, f64, Complex64)>,
    jumps: Vec<(Vec<f64>, f64, Complex64)>,
    stable: Option<PreparedStable>,
}

struct PreparedStable {
    alpha: f64,
    c_alpha: f64,
    atoms: Vec<(Vec<f64>, f64, Complex64)>,
    circle: Option<(Vec<f64>, Vec<f64>)>,
}

impl LevySpec {
    pub fn validate(&self) -> Result<()> {
        self.prepare().map(|_| ())
    }

    fn check_dim(&self, v: &[f64], what: &str) -> Result<()> {
        if v.len() != self.dim || v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Config(format!("{what} must be a finite {}-vector", self.dim)));
        }
        Ok(())
    }

    fn sphere_atom(&self, a: &SphereAtom, i: usize, t: &Transform) -> Result<(Vec<f64>, f64, Complex64)> {
        self.check_dim(&a.theta, "sphere atom")?;
        if (dot(&a.theta, &a.theta).sqrt() - 1.0).abs() > 1e-12 {
            return Err(Error::Config("sphere atoms must be unit vectors".into()));
        }
        if !(a.weight >= 0.0 && a.weight.is_finite()) {
            return Err(Error::Config("atom weights must be finite and non-negative".into()));
        }
        Ok((a.theta.clone(), a.weight, t.eval(Some(i), &a.theta)?))
    }

    fn prepare(&self) -> Result<Prepared> {
        if self.phi.sup() > 1.0 + 1e-12 || self.psi.sup() > 1.0 + 1e-12 {
            return Err(Error::Config("transforms must satisfy sup |φ|, sup |ψ| ≤ 1".into()));
        }
        if !self.drift.is_empty() {
            self.check_dim(&self.drift, "drift")?;
        }
        let sphere = match &self.gaussian {
            GaussianPart::None => Vec::new(),
            GaussianPart::Atoms(atoms) => {
                atoms.iter().enumerate().map(|(i, a)| self.sphere_atom(a, i, &self.psi)).collect::<Result<_>>()?
            }
            GaussianPart::Matrix(b) => {
                let d = self.dim;
                if b.len() != d * d || b.iter().any(|x| !x.is_finite()) {
                    return Err(Error::Config("Gaussian matrix has the wrong shape".into()));
                }
                for i in 0..d {
                    for j in 0..d {
                        if (b[i * d + j] - b[j * d + i]).abs() > 1e-12 * (1.0 + b[i * d + j].abs()) {
                            return Err(Error::Config("Gaussian matrix must be symmetric".into()));
                        }
                    }
                }
                let (values, vectors) = symmetric_eigen(b, d);
                let scale = values.iter().map(|v| v.abs()).fold(1.0, f64::max);
                if values.iter().any(|&v| v < -1e-12 * scale) {
                    return Err(Error::Config("Gaussian matrix must be non-negative definite".into()));
                }
                values
                    .into_iter()
                    .zip(vectors)
                    .enumerate()
                    .map(|(i, (w, theta))| Ok((theta.clone(), w.max(0.0), self.psi.eval(Some(i), &theta)?)))
                    .collect::<Result<_>>()?
            }
        };
        let mut jumps = Vec::new();
        let mut stable = None;
        match &self.jumps {
            JumpPart::None => {}
            JumpPart::Atoms(atoms) => {
                for (i, a) in atoms.iter().enumerate() {
                    self.check_dim(&a.x, "jump atom")?;
                    if dot(&a.x, &a.x) == 0.0 {
                        return Err(Error::Config("jump atoms must avoid the origin".into()));
                    }
                    if !(a.weight >= 0.0 && a.weight.is_finite()) {
                        return Err(Error::Config("atom weights must be finite and non-negative".into()));
                    }
                    jumps.push((a.x.clone(), a.weight, self.phi.eval(Some(i), &a.x)?));
                }
            }
            JumpPart::Stable { alpha, angular } => {
                if !(*alpha > 0.0 && *alpha < 2.0) {
                    return Err(Error::Config(format!("stable index must lie in (0, 2), got {alpha}")));
                }
                let (atoms, circle) = match angular {
                    StableAngular::Atoms(atoms) => (
                        atoms.iter().enumerate().map(|(i, a)| self.sphere_atom(a, i, &self.phi)).collect::<Result<_>>()?,
                        None,
                    ),
                    StableAngular::UniformCircle { nodes_per_arc } => {
                        if self.dim != 2 || *nodes_per_arc == 0 {
                            return Err(Error::Config("uniform circle measure needs a planar Lévy datum".into()));
                        }
                        if matches!(self.phi, Transform::PerAtom(_)) {
                            return Err(Error::Config("per-atom φ is meaningless for a continuous measure".into()));
                        }
                        (Vec::new(), Some(gauss_legendre(*nodes_per_arc)))
                    }
                };
                stable = Some(PreparedStable { alpha: *alpha, c_alpha: stable_constant(*alpha), atoms, circle });
            }
        }
        Ok(Prepared { sphere, jumps, stable })
    }
}

impl Prepared {
    /// (numerator, denominator) of the multiplier at ξ.
    fn parts(&self, xi: &[f64], phi: &Transform) -> (Complex64, f64) {
        let mut num = ZERO;
        let mut den = 0.0;
        for (theta, u, psi) in &self.sphere {
            let q = 0.5 * u * dot(xi, theta).powi(2);
            num += psi * q;
            den += q;
        }
        for (x, w, ph) in &self.jumps {
            let q = w * (1.0 - dot(xi, x).cos());
            num += ph * q;
            den += q;
        }
        if let Some(st) = &self.stable {
            for (theta, u, ph) in &st.atoms {
                let q = st.c_alpha * u * dot(xi, theta).abs().powf(st.alpha);
                num += ph * q;
                den += q;
            }
            if let Some((nodes, weights)) = &st.circle {
                let r = dot(xi, xi).sqrt();
                let phi0 = xi[1].atan2(xi[0]);
                // ξ·θ(t) = r cos(t − φ₀) changes sign at φ₀ ± π/2
                for arc_start in [phi0 - PI / 2.0, phi0 + PI / 2.0] {
                    for (s, w) in nodes.iter().zip(weights) {
                        let t = arc_start + PI / 2.0 * (s + 1.0);
                        let theta = [t.cos(), t.sin()];
                        let q = st.c_alpha * w * PI / 2.0 * (r * (t - phi0).cos()).abs().powf(st.alpha);
                        // φ is bounded by construction; evaluation cannot fail here
                        let ph = phi.eval(None, &theta).unwrap_or(ZERO);
                        num += ph * q;
                        den += q;
                    }
                }
            }
        }
        (num, den)
    }
}

fn finish(grid: FrequencyGrid, m: MultiplierSymbolGrid) -> Result<MultiplierSymbolGrid> {
    if let Some(flat) = m.values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Degenerate(format!(
            "Lévy symbol vanishes at lattice frequency {:?}",
            grid.wavenumbers(flat)
        )));
    }
    Ok(m)
}

/// The Lévy multiplier M(ξ) on the lattice, with M(0) = 0.
pub fn symbol_levy(grid: FrequencyGrid, spec: &LevySpec) -> Result<MultiplierSymbolGrid> {
    if spec.dim != grid.dim {
        return Err(Error::Shape("Lévy datum and grid dimensions differ".into()));
    }
    let prepared = spec.prepare()?;
    let bound = spec.phi.sup().max(spec.psi.sup());
    let m = MultiplierSymbolGrid::from_fn(grid, ZERO, bound, |xi| {
        let (num, den) = prepared.parts(xi, &spec.phi);
        if den > 0.0 {
            num / den
        } else {
            Complex64::new(f64::NAN, f64::NAN)
        }
    });
    finish(grid, m)
}

/// Finite-horizon multiplier of a compound Poisson datum,
/// m_T(ξ) = (e^{2Tρ(ξ)} − 1) ρ(ξ)^{−1} Σ wⱼ(1 − cos xⱼ·ξ) φ(xⱼ),
/// with ρ(ξ) = Σ wⱼ(cos xⱼ·ξ − 1) and m_T = 0 where ρ = 0.
pub fn symbol_levy_finite_t(grid: FrequencyGrid, spec: &LevySpec, t: f64) -> Result<MultiplierSymbolGrid> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Config(format!("time horizon must be finite and non-negative, got {t}")));
    }
    if !matches!(spec.jumps, JumpPart::Atoms(_)) || !matches!(spec.gaussian, GaussianPart::None) {
        return Err(Error::Config("finite-horizon multipliers need a pure compound Poisson datum".into()));
    }
    if spec.dim != grid.dim {
        return Err(Error::Shape("Lévy datum and grid dimensions differ".into()));
    }
    let prepared = spec.prepare()?;
    let m = MultiplierSymbolGrid::from_fn(grid, ZERO, spec.phi.sup(), |xi| {
        let (num, den) = prepared.parts(xi, &spec.phi);
        let rho = -den;
        if rho == 0.0 {
            ZERO
        } else {
            num * ((2.0 * t * rho).exp_m1() / rho)
        }
    });
    finish(grid, m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloorScanReport {
    pub configurations: usize,
    /// Configurations whose multiplier is ξ̄²/(c|ξ|²) to 1e−9.
    pub reproducing: usize,
    /// Smallest |c| among reproducing configurations.
    pub min_abs_c: f64,
    /// Reproducing configurations with |c| < 2 − 1e−3.
    pub violations: usize,
}

const FLOOR_DIRECTIONS: usize = 64;

/// Fits M(e^{iφ}) ≈ β e^{−2iφ} over equally spaced directions and returns
/// (β, max residual).
fn fit_beurling(atoms: &[(f64, f64, Complex64)]) -> (Complex64, f64) {
    let values: Vec<(f64, Complex64)> = (0..FLOOR_DIRECTIONS)
        .map(|l| {
            let phi = PI * l as f64 / FLOOR_DIRECTIONS as f64;
            let (mut num, mut den) = (ZERO, 0.0);
            for &(theta, u, psi) in atoms {
                let q = u * (phi - theta).cos().powi(2);
                num += psi * q;
                den += q;
            }
            (phi, if den > 1e-300 { num / den } else { Complex64::new(f64::NAN, 0.0) })
        })
        .collect();
    let beta = values.iter().map(|(phi, m)| m * Complex64::from_polar(1.0, 2.0 * phi)).sum::<Complex64>()
        / FLOOR_DIRECTIONS as f64;
    let residual = values
        .iter()
        .map(|(phi, m)| (m - beta * Complex64::from_polar(1.0, -2.0 * phi)).norm())
        .fold(0.0, |a: f64, b| if b.is_nan() { f64::INFINITY } else { a.max(b) });
    (beta, residual)
}

/// Searches planar Gaussian parts with at most 16 sphere atoms for
/// multipliers of the form ξ̄²/(c|ξ|²), recording the smallest |c|. Half of
/// the configurations are random; the rest are perturbed equally spaced
/// families ψⱼ = ρ e^{iχ} e^{−2iθⱼ}, which reproduce |c| = 2/ρ.
pub fn gaussian_floor_scan(configurations: usize, seed: u64, blocks: usize) -> Result<FloorScanReport> {
    if configurations == 0 || blocks == 0 {
        return Err(Error::Config("configurations and blocks must be positive".into()));
    }
    let partials: Vec<(usize, f64, usize)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = substream(seed, b as u64);
            let (mut reproducing, mut min_c, mut violations) = (0, f64::INFINITY, 0);
            for _ in 0..strided_count(configurations, blocks, b) {
                let n = rng.random_range(1..=16);
                let atoms: Vec<(f64, f64, Complex64)> = if rng.random_bool(0.5) {
                    (0..n)
                        .map(|_| {
                            let psi = Complex64::from_polar(rng.random_range(0.0..=1.0f64).sqrt(), rng.random_range(0.0..2.0 * PI));
                            (rng.random_range(0.0..PI), rng.random_range(0.0..1.0), psi)
                        })
                        .collect()
                } else {
                    let n = n.max(3);
                    let offset = rng.random_range(0.0..PI);
                    let chi = rng.random_range(0.0..2.0 * PI);
                    let rho = rng.random_range(0.5..=1.0);
                    (0..n)
                        .map(|j| {
                            let theta = offset + PI * j as f64 / n as f64;
                            (theta, 1.0, Complex64::from_polar(rho, chi - 2.0 * theta))
                        })
                        .collect()
                };
                let (beta, residual) = fit_beurling(&atoms);
                if residual < 1e-9 && beta.norm() > 0.0 {
                    reproducing += 1;
                    let c = 1.0 / beta.norm();
                    min_c = min_c.min(c);
                    if c < 2.0 - 1e-3 {
                        violations += 1;
                    }
                }
            }
            (reproducing, min_c, violations)
        })
        .collect();
    let mut report = FloorScanReport { configurations, reproducing: 0, min_abs_c: f64::INFINITY, violations: 0 };
    for (r, c, v) in partials {
        report.reproducing += r;
        report.min_abs_c = report.min_abs_c.min(c);
        report.violations += v;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> FrequencyGrid {
        FrequencyGrid::square(16, 1.0).unwrap()
    }

    fn spec(gaussian: GaussianPart, jumps: JumpPart, phi: Transform, psi: Transform) -> LevySpec {
        LevySpec { dim: 2, drift: vec![], gaussian, jumps, phi, psi }
    }

    #[test]
    fn stable_constant_values() {
        assert!((stable_constant(1.0) - PI / 2.0).abs() < 1e-15);
        // c_α is continuous through α = 1
        assert!((stable_constant(1.0 + 1e-6) - PI / 2.0).abs() < 1e-5);
        // α = 1/2: ∫(1 − cos r) r^{−3/2} dr = √(2π)
        assert!((stable_constant(0.5) - (2.0 * PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn jacobi_diagonalises() {
        let b = [2.0, 1.0, 1.0, 2.0];
        let (vals, vecs) = symmetric_eigen(&b, 2);
        let mut sorted = vals.clone();
        sorted.sort_by(f64::total_cmp);
        assert!((sorted[0] - 1.0).abs() < 1e-14 && (sorted[1] - 3.0).abs() < 1e-14);
        for (l, v) in vals.iter().zip(&vecs) {
            let bv = [b[0] * v[0] + b[1] * v[1], b[2] * v[0] + b[3] * v[1]];
            assert!((bv[0] - l * v[0]).abs() < 1e-14 && (bv[1] - l * v[1]).abs() < 1e-14);
        }
    }

    #[test]
    fn trivial_transforms_give_one() {
        let s = spec(
            GaussianPart::Matrix(vec![1.0, 0.2, 0.2, 0.5]),
            JumpPart::Atoms(vec![JumpAtom { x: vec![0.3, 0.1], weight: 2.0 }]),
            Transform::one(),
            Transform::one(),
        );
        let m = symbol_levy(grid(), &s).unwrap();
        assert!(m.values[1..].iter().all(|v| (v - 1.0).norm() < 1e-14));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let bad_psi = spec(GaussianPart::None, JumpPart::None, Transform::one(), Transform::Constant(Complex64::new(2.0, 0.0)));
        assert!(symbol_levy(grid(), &bad_psi).is_err());
        let not_psd = spec(GaussianPart::Matrix(vec![1.0, 0.0, 0.0, -1.0]), JumpPart::None, Transform::one(), Transform::one());
        assert!(symbol_levy(grid(), &not_psd).is_err());
        let empty = spec(GaussianPart::None, JumpPart::None, Transform::one(), Transform::one());
        assert!(matches!(symbol_levy(grid(), &empty), Err(Error::Degenerate(_))));
        let stable = spec(
            GaussianPart::None,
            JumpPart::Stable { alpha: 2.5, angular: StableAngular::UniformCircle { nodes_per_arc: 8 } },
            Transform::one(),
            Transform::one(),
        );
        assert!(symbol_levy(grid(), &stable).is_err());
    }

    #[test]
    fn finite_horizon_limits() {
        let s = spec(
            GaussianPart::None,
            JumpPart::Atoms(vec![
                JumpAtom { x: vec![0.05, 0.0], weight: 1.0 },
                JumpAtom { x: vec![0.0, 0.07], weight: 2.0 },
            ]),
            Transform::one(),
            Transform::one(),
        );
        let g = grid();
        let m0 = symbol_levy_finite_t(g, &s, 0.0).unwrap();
        assert!(m0.values.iter().all(|v| v.norm() == 0.0));
        let m1 = symbol_levy_finite_t(g, &s, 0.7).unwrap();
        for (flat, v) in m1.values.iter().enumerate().skip(1) {
            let xi = g.frequency(flat);
            let rho = (0.05 * xi[0]).cos() - 1.0 + 2.0 * ((0.07 * xi[1]).cos() - 1.0);
            let expect = if rho == 0.0 { 0.0 } else { 1.0 - (1.4 * rho).exp() };
            assert!((v - expect).norm() < 1e-13);
        }
    }

    #[test]
    fn floor_scan_finds_the_equally_spaced_family() {
        let r = gaussian_floor_scan(400, 3, 4).unwrap();
        assert!(r.reproducing > 0);
        assert_eq!(r.violations, 0);
        assert!(r.min_abs_c >= 2.0 - 1e-9);
    }
}

//! Riesz, Beurling–Ahlfors, constant-matrix and Laplace-transform symbols.

use super::{FrequencyGrid, MultiplierSymbolGrid};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_breaks, QuadOptions};
use crate::special::gamma_complex;
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn norm_sqr(xi: &[f64]) -> f64 {
    xi.iter().map(|x| x * x).sum()
}

fn check_axis(grid: &FrequencyGrid, axis: usize) -> Result<()> {
    if axis >= grid.dim {
        return Err(Error::Config(format!("axis {axis} out of range for a {}-dimensional grid", grid.dim)));
    }
    Ok(())
}

/// R_j: iξ_j / |ξ| (axes are 0-based).
pub fn symbol_riesz(grid: FrequencyGrid, axis: usize) -> Result<MultiplierSymbolGrid> {
    check_axis(&grid, axis)?;
    Ok(MultiplierSymbolGrid::from_fn(grid, ZERO, 1.0, move |xi| {
        I * (xi[axis] / norm_sqr(xi).sqrt())
    }))
}

/// R_j R_k: −ξ_j ξ_k / |ξ|².
pub fn symbol_second_riesz(grid: FrequencyGrid, j: usize, k: usize) -> Result<MultiplierSymbolGrid> {
    check_axis(&grid, j)?;
    check_axis(&grid, k)?;
    Ok(MultiplierSymbolGrid::from_fn(grid, ZERO, 1.0, move |xi| {
        Complex64::from(-xi[j] * xi[k] / norm_sqr(xi))
    }))
}

/// Beurling–Ahlfors: ξ̄² / |ξ|² with ξ = ξ₁ + iξ₂.
pub fn symbol_beurling(grid: FrequencyGrid) -> Result<MultiplierSymbolGrid> {
    if grid.dim != 2 {
        return Err(Error::Config("the Beurling–Ahlfors symbol needs a planar grid".into()));
    }
    Ok(MultiplierSymbolGrid::from_fn(grid, ZERO, 1.0, |xi| {
        let z = Complex64::new(xi[0], -xi[1]);
        z * z / norm_sqr(xi)
    }))
}

/// Spectral norm of a square complex matrix by power iteration on AᴴA.
pub fn spectral_norm(a: &[Complex64], dim: usize) -> f64 {
    let mut v: Vec<Complex64> = (0..dim).map(|i| Complex64::new(1.0 + 0.1 * i as f64, 0.3)).collect();
    let mut sigma = 0.0;
    for _ in 0..500 {
        let av: Vec<Complex64> = (0..dim).map(|i| (0..dim).map(|j| a[i * dim + j] * v[j]).sum()).collect();
        let w: Vec<Complex64> = (0..dim).map(|j| (0..dim).map(|i| a[i * dim + j].conj() * av[i]).sum()).collect();
        let n = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n == 0.0 {
            return 0.0;
        }
        sigma = n.sqrt();
        v = w.into_iter().map(|z| z / n).collect();
    }
    sigma
}

/// (Aξ·ξ) / |ξ|² for a constant complex matrix A (row-major, dim × dim).
/// The recorded bound is the spectral norm of A.
pub fn symbol_constant_matrix(grid: FrequencyGrid, a: &[Complex64]) -> Result<MultiplierSymbolGrid> {
    let d = grid.dim;
    if a.len() != d * d {
        return Err(Error::Shape(format!("matrix has {} entries, grid dimension is {d}", a.len())));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("matrix entries".into()));
    }
    let a = a.to_vec();
    let bound = spectral_norm(&a, d);
    Ok(MultiplierSymbolGrid::from_fn(grid, ZERO, bound, move |xi| {
        let mut acc = ZERO;
        for j in 0..d {
            for k in 0..d {
                acc += a[j * d + k] * (xi[j] * xi[k]);
            }
        }
        acc / norm_sqr(xi)
    }))
}

/// The function a in the Laplace-transform symbols.
#[derive(Clone)]
pub enum LaplaceProfile {
    Constant(Complex64),
    /// The profile producing (4π²|ξ|²)^{iγ}: t^{−iγ}/Γ(1−iγ) in the heat
    /// representation and (2y)^{−2iγ}/Γ(2−2iγ) in the Poisson one.
    ImaginaryPower { gamma: f64 },
    /// Arbitrary bounded a with sup |a| ≤ `sup`. The integrals are adaptive
    /// in log t, so a should be smooth; jumps cost accuracy.
    Custom { a: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>, sup: f64 },
}

impl fmt::Debug for LaplaceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "Constant({c})"),
            Self::ImaginaryPower { gamma } => write!(f, "ImaginaryPower {{ gamma: {gamma} }}"),
            Self::Custom { sup, .. } => write!(f, "Custom {{ sup: {sup} }}"),
        }
    }
}

impl LaplaceProfile {
    /// a(t) in the heat representation.
    pub fn heat(&self, t: f64) -> Complex64 {
        match self {
            Self::Constant(c) => *c,
            Self::ImaginaryPower { gamma } => {
                Complex64::from_polar(1.0, -gamma * t.ln()) / gamma_complex(Complex64::new(1.0, -gamma))
            }
            Self::Custom { a, .. } => a(t),
        }
    }

    /// a(y) in the Poisson representation.
    pub fn poisson(&self, y: f64) -> Complex64 {
        match self {
            Self::Constant(c) => *c,
            Self::ImaginaryPower { gamma } => {
                Complex64::from_polar(1.0, -2.0 * gamma * (2.0 * y).ln())
                    / gamma_complex(Complex64::new(2.0, -2.0 * gamma))
            }
            Self::Custom { a, .. } => a(y),
        }
    }

    fn closed_form(&self, xi_sqr: f64) -> Option<Complex64> {
        match self {
            Self::Constant(c) => Some(*c),
            Self::ImaginaryPower { gamma } => {
                Some(Complex64::from_polar(1.0, gamma * (4.0 * PI * PI * xi_sqr).ln()))
            }
            Self::Custom { .. } => None,
        }
    }

    fn bound(&self) -> f64 {
        match self {
            Self::Constant(c) => c.norm(),
            Self::ImaginaryPower { .. } => 1.0,
            Self::Custom { sup, .. } => *sup,
        }
    }
}

const LAPLACE_OPTS: QuadOptions = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-11, max_segments: 4000 };

/// ∫ g(v) dv over the window where the weights e^{−e^v} e^{kv} (k = 1, 2)
/// exceed 1e−19, with unit panels seeded so that profiles with jumps or
/// narrow support are not missed by the first Kronrod estimate.
fn integrate_line(g: impl Fn(f64) -> Complex64 + Copy) -> Result<Complex64> {
    let breaks: Vec<f64> = (-44..7).map(f64::from).collect();
    Ok(integrate_with_breaks(g, -45.0, 7.0, &breaks, LAPLACE_OPTS)?.value)
}

/// 4π²|ξ|² ∫₀^∞ a(t) e^{−4π²t|ξ|²} dt written as ∫ a(e^v/s) e^{−e^v} e^v dv
/// with s = 4π²|ξ|², which is smooth even for oscillating a(t) = t^{−iγ}.
fn heat_integral(profile: &LaplaceProfile, xi_sqr: f64) -> Result<Complex64> {
    let s = 4.0 * PI * PI * xi_sqr;
    integrate_line(|v: f64| {
        let u = v.exp();
        if u > 800.0 {
            return ZERO;
        }
        profile.heat(u / s) * (u * (-u).exp())
    })
}

/// 16π²|ξ|² ∫₀^∞ y a(y) e^{−4πy|ξ|} dy as ∫ a(e^v/s) e^{2v − e^v} dv with
/// s = 4π|ξ|.
fn poisson_integral(profile: &LaplaceProfile, xi_sqr: f64) -> Result<Complex64> {
    let s = 4.0 * PI * xi_sqr.sqrt();
    integrate_line(|v: f64| {
        let u = v.exp();
        if u > 800.0 {
            return ZERO;
        }
        profile.poisson(u / s) * (u * u * (-u).exp())
    })
}

/// Evaluates a radial symbol once per distinct |k|² on the lattice.
fn radial_symbol(
    grid: FrequencyGrid,
    bound: f64,
    eval: impl Fn(f64) -> Result<Complex64> + Sync,
) -> Result<MultiplierSymbolGrid> {
    let mut keys: Vec<u64> = (1..grid.len())
        .map(|flat| grid.wavenumbers(flat).iter().map(|k| (k * k) as u64).sum())
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let l2 = grid.box_length * grid.box_length;
    let values: Vec<Result<(u64, Complex64)>> =
        keys.par_iter().map(|&k2| Ok((k2, eval(k2 as f64 / l2)?))).collect();
    let mut table = BTreeMap::new();
    for v in values {
        let (k, m) = v?;
        table.insert(k, m);
    }
    let values = (0..grid.len())
        .map(|flat| {
            if flat == 0 {
                ZERO
            } else {
                let k2: u64 = grid.wavenumbers(flat).iter().map(|k| (k * k) as u64).sum();
                table[&k2]
            }
        })
        .collect();
    Ok(MultiplierSymbolGrid { grid, values, value_at_zero: ZERO, bound })
}

/// 4π²|ξ|² ∫₀^∞ a(t) e^{−4π²t|ξ|²} dt, using the closed form when the
/// profile has one.
pub fn symbol_laplace_heat(grid: FrequencyGrid, profile: &LaplaceProfile) -> Result<MultiplierSymbolGrid> {
    radial_symbol(grid, profile.bound(), |x2| match profile.closed_form(x2) {
        Some(v) => Ok(v),
        None => heat_integral(profile, x2),
    })
}

/// As [`symbol_laplace_heat`] but always by quadrature.
pub fn symbol_laplace_heat_quadrature(grid: FrequencyGrid, profile: &LaplaceProfile) -> Result<MultiplierSymbolGrid> {
    radial_symbol(grid, profile.bound(), |x2| heat_integral(profile, x2))
}

/// 16π²|ξ|² ∫₀^∞ y a(y) e^{−4πy|ξ|} dy, using the closed form when the
/// profile has one.
pub fn symbol_laplace_poisson(grid: FrequencyGrid, profile: &LaplaceProfile) -> Result<MultiplierSymbolGrid> {
    radial_symbol(grid, profile.bound(), |x2| match profile.closed_form(x2) {
        Some(v) => Ok(v),
        None => poisson_integral(profile, x2),
    })
}

/// As [`symbol_laplace_poisson`] but always by quadrature.
pub fn symbol_laplace_poisson_quadrature(
    grid: FrequencyGrid,
    profile: &LaplaceProfile,
) -> Result<MultiplierSymbolGrid> {
    radial_symbol(grid, profile.bound(), |x2| poisson_integral(profile, x2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> FrequencyGrid {
        FrequencyGrid::square(n, 1.0).unwrap()
    }

    fn at(m: &MultiplierSymbolGrid, k1: i64, k2: i64) -> Complex64 {
        let n = m.grid.size as i64;
        let i = k1.rem_euclid(n) as usize;
        let j = k2.rem_euclid(n) as usize;
        m.values[i * m.grid.size + j]
    }

    #[test]
    fn beurling_values() {
        let b = symbol_beurling(grid(16)).unwrap();
        assert!((at(&b, 1, 0) - 1.0).norm() < 1e-15);
        assert!((at(&b, 0, 1) + 1.0).norm() < 1e-15);
        assert!((at(&b, 1, 1) + I).norm() < 1e-15);
        assert_eq!(b.values[0], ZERO);
        assert!(symbol_beurling(FrequencyGrid::new(3, 8, 1.0).unwrap()).is_err());
    }

    #[test]
    fn odd_symbols_vanish_on_nyquist_and_stay_hermitian() {
        let g = grid(16);
        let r = symbol_riesz(g, 0).unwrap();
        assert_eq!(at(&r, -8, 3), ZERO);
        assert!((at(&r, 3, -8) - I * (3.0 / 73f64.sqrt())).norm() < 1e-15);
        assert_eq!(r.hermitian_defect(), 0.0);
        assert!(symbol_riesz(g, 2).is_err());
    }

    #[test]
    fn matrix_symbol_bound() {
        let b = [Complex64::new(1.0, 0.0), -I, -I, Complex64::new(-1.0, 0.0)];
        let m = symbol_constant_matrix(grid(8), &b).unwrap();
        assert!((m.bound - 2.0).abs() < 1e-12);
        assert!(m.sup_norm() <= 1.0 + 1e-15);
        assert!(symbol_constant_matrix(grid(8), &b[..3]).is_err());
    }

    #[test]
    fn constant_profiles_give_identity_by_quadrature() {
        let g = grid(8);
        let one = LaplaceProfile::Constant(Complex64::new(1.0, 0.0));
        for m in [symbol_laplace_heat_quadrature(g, &one).unwrap(), symbol_laplace_poisson_quadrature(g, &one).unwrap()] {
            assert!(m.values[1..].iter().all(|v| (v - 1.0).norm() < 1e-10));
        }
    }

    #[test]
    fn imaginary_powers_by_quadrature() {
        let g = grid(64);
        let p = LaplaceProfile::ImaginaryPower { gamma: 1.5 };
        let exact = symbol_laplace_heat(g, &p).unwrap();
        for m in [symbol_laplace_heat_quadrature(g, &p).unwrap(), symbol_laplace_poisson_quadrature(g, &p).unwrap()] {
            let gap = m.values.iter().zip(&exact.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(gap < 1e-10, "{gap}");
        }
    }

    #[test]
    fn custom_profile_matches_a_direct_integral() {
        // a(t) = e^{−t}: 4π²|ξ|² / (4π²|ξ|² + 1)
        let g = grid(8);
        let p = LaplaceProfile::Custom { a: Arc::new(|t| Complex64::from((-t).exp())), sup: 1.0 };
        let m = symbol_laplace_heat(g, &p).unwrap();
        let s = 4.0 * PI * PI * 5.0;
        assert!((at(&m, 1, 2) - s / (s + 1.0)).norm() < 1e-10);
    }
}

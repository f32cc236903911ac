//! Fourier multipliers on a periodic grid.
//!
//! Transforms follow f̂(ξ) = ∫ f(x) e^{2πi ξ·x} dx and
//! f(x) = ∫ f̂(ξ) e^{−2πi ξ·x} dξ. On a torus of side L with N points per
//! axis the frequencies are ξ = k/L, k ∈ {−N/2, …, N/2 − 1}. A symbol m acts
//! as f ↦ (m f̂)ˇ; every grid symbol is stored in FFT index order.

mod field;
pub mod io;
pub mod levy;
pub mod probe;
pub mod symbols;

pub use field::{apply_symbol, lp_norm, ComplexField, FftEngine};
pub use levy::{
    gaussian_floor_scan, symbol_levy, symbol_levy_finite_t, FloorScanReport, GaussianPart, JumpAtom, JumpPart,
    LevySpec, SphereAtom, Transform,
};
pub use probe::{operator_ratio_probe, ProbeConfig, ProbeFamily, ProbeReport, TestField};
pub use symbols::{
    symbol_beurling, symbol_constant_matrix, symbol_laplace_heat, symbol_laplace_heat_quadrature,
    symbol_laplace_poisson, symbol_laplace_poisson_quadrature, symbol_riesz, symbol_second_riesz, LaplaceProfile,
};

use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A d-dimensional periodic lattice with `size` points per axis on a box
/// of side `box_length`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    pub dim: usize,
    pub size: usize,
    pub box_length: f64,
}

impl FrequencyGrid {
    pub fn new(dim: usize, size: usize, box_length: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("grid dimension must be positive".into()));
        }
        if size < 8 || !size.is_power_of_two() {
            return Err(Error::Config(format!("grid size must be a power of two ≥ 8, got {size}")));
        }
        if !(box_length > 0.0 && box_length.is_finite()) {
            return Err(Error::Config(format!("box length must be positive, got {box_length}")));
        }
        Ok(Self { dim, size, box_length })
    }

    pub fn square(size: usize, box_length: f64) -> Result<Self> {
        Self::new(2, size, box_length)
    }

    pub fn len(&self) -> usize {
        self.size.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.box_length / self.size as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Multi-index of a flat (row-major, last axis fastest) index.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim];
        for a in (0..self.dim).rev() {
            idx[a] = flat % self.size;
            flat /= self.size;
        }
        idx
    }

    /// Signed integer wavenumber of an FFT index.
    pub fn wavenumber(&self, i: usize) -> i64 {
        if i < self.size / 2 {
            i as i64
        } else {
            i as i64 - self.size as i64
        }
    }

    pub fn wavenumbers(&self, flat: usize) -> Vec<i64> {
        self.multi_index(flat).into_iter().map(|i| self.wavenumber(i)).collect()
    }

    /// ξ = k / L at a flat index.
    pub fn frequency(&self, flat: usize) -> Vec<f64> {
        self.wavenumbers(flat).into_iter().map(|k| k as f64 / self.box_length).collect()
    }

    /// Spatial coordinate x = i·L/N at a flat index, on [0, L)^d.
    pub fn position(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat).into_iter().map(|i| i as f64 * self.spacing()).collect()
    }

    fn nyquist(&self) -> i64 {
        -(self.size as i64) / 2
    }
}

/// A symbol sampled on the frequency lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierSymbolGrid {
    pub grid: FrequencyGrid,
    pub values: Vec<Complex64>,
    pub value_at_zero: Complex64,
    /// A bound for sup |m| recorded by the constructor.
    pub bound: f64,
}

impl MultiplierSymbolGrid {
    /// Samples `m(ξ)` at every nonzero lattice point. Where some coordinates
    /// sit on the Nyquist wavenumber −N/2, which has no partner +N/2 on the
    /// grid, the value is the average of m over both signs of those
    /// coordinates. This zeroes odd symbols there, keeps m(−ξ) = conj m(ξ)
    /// whenever the continuous symbol has it, and commutes with sums. It
    /// commutes with products only when at most one factor is odd in each
    /// such coordinate: R₁·R₁ is 0 on the Nyquist line while R₁R₁ is −1.
    pub fn from_fn(
        grid: FrequencyGrid,
        value_at_zero: Complex64,
        bound: f64,
        m: impl Fn(&[f64]) -> Complex64 + Sync,
    ) -> Self {
        let nyq = grid.nyquist();
        let values = (0..grid.len())
            .into_par_iter()
            .map(|flat| {
                if flat == 0 {
                    return value_at_zero;
                }
                let k = grid.wavenumbers(flat);
                let xi: Vec<f64> = k.iter().map(|&k| k as f64 / grid.box_length).collect();
                let nyq_axes: Vec<usize> = (0..grid.dim).filter(|&a| k[a] == nyq).collect();
                if nyq_axes.is_empty() {
                    return m(&xi);
                }
                let combos = 1usize << nyq_axes.len();
                let mut acc = Complex64::new(0.0, 0.0);
                let mut point = xi.clone();
                for mask in 0..combos {
                    for (bit, &a) in nyq_axes.iter().enumerate() {
                        point[a] = if mask >> bit & 1 == 1 { -xi[a] } else { xi[a] };
                    }
                    acc += m(&point);
                }
                acc / combos as f64
            })
            .collect();
        Self { grid, values, value_at_zero, bound }
    }

    /// Pointwise product, the symbol of the composed operator.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::Shape("composing symbols on different grids".into()));
        }
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
            value_at_zero: self.value_at_zero * other.value_at_zero,
            bound: self.bound * other.bound,
        })
    }

    /// Linear combination Σ cᵢ mᵢ with bound Σ |cᵢ| bᵢ.
    pub fn combine(terms: &[(Complex64, &Self)]) -> Result<Self> {
        let first = terms.first().ok_or_else(|| Error::Config("empty combination".into()))?.1;
        let grid = first.grid;
        if terms.iter().any(|(_, m)| m.grid != grid) {
            return Err(Error::Shape("combining symbols on different grids".into()));
        }
        let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
        let mut zero = Complex64::new(0.0, 0.0);
        let mut bound = 0.0;
        for (c, m) in terms {
            for (v, w) in values.iter_mut().zip(&m.values) {
                *v += c * w;
            }
            zero += c * m.value_at_zero;
            bound += c.norm() * m.bound;
        }
        Ok(Self { grid, values, value_at_zero: zero, bound })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| c * v).collect(),
            value_at_zero: c * self.value_at_zero,
            bound: c.norm() * self.bound,
        }
    }

    pub fn identity(grid: FrequencyGrid) -> Self {
        Self { grid, values: vec![Complex64::new(1.0, 0.0); grid.len()], value_at_zero: Complex64::new(1.0, 0.0), bound: 1.0 }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest |m(ξ) − conj m(−ξ)| over the lattice; zero for symbols that
    /// map real fields to real fields.
    pub fn hermitian_defect(&self) -> f64 {
        let g = self.grid;
        let n = g.size;
        (0..g.len())
            .map(|flat| {
                let idx = g.multi_index(flat);
                let neg = idx.iter().fold(0, |acc, &i| acc * n + (n - i) % n);
                (self.values[flat] - self.values[neg].conj()).norm()
            })
            .fold(0.0, f64::max)
    }
}

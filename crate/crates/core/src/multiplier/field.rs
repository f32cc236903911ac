use super::{FrequencyGrid, MultiplierSymbolGrid};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Complex samples on the spatial lattice of a [`FrequencyGrid`], stored
/// row-major with the last axis fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexField {
    pub grid: FrequencyGrid,
    pub data: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(grid: FrequencyGrid, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != grid.len() {
            return Err(Error::Shape(format!("{} samples for a grid of {}", data.len(), grid.len())));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("field samples".into()));
        }
        Ok(Self { grid, data })
    }

    pub fn zeros(grid: FrequencyGrid) -> Self {
        Self { grid, data: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    /// Samples `f` at the positions x ∈ [0, L)^d.
    pub fn from_fn(grid: FrequencyGrid, f: impl Fn(&[f64]) -> Complex64 + Sync) -> Self {
        let data = (0..grid.len()).into_par_iter().map(|i| f(&grid.position(i))).collect();
        Self { grid, data }
    }

    pub fn dx(&self) -> f64 {
        self.grid.cell_volume()
    }

    pub fn mean(&self) -> Complex64 {
        self.data.iter().sum::<Complex64>() / self.data.len() as f64
    }

    pub fn subtract_mean(&mut self) {
        let m = self.mean();
        self.data.iter_mut().for_each(|z| *z -= m);
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { grid: self.grid, data: self.data.iter().map(|z| c * z).collect() }
    }

    /// Largest |Im f|.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Relative L² distance ‖self − other‖₂ / ‖other‖₂.
    pub fn relative_l2_error(&self, other: &Self) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Shape("comparing fields on different grids".into()));
        }
        let num: f64 = self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum();
        let den: f64 = other.data.iter().map(|b| b.norm_sqr()).sum();
        Ok((num / den).sqrt())
    }
}

/// ‖f‖_p = (Σ |f|^p dx)^{1/p}.
pub fn lp_norm(f: &ComplexField, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("lp_norm needs p ≥ 1, got {p}")));
    }
    let s: f64 = f.data.iter().map(|z| z.norm().powf(p)).sum();
    Ok((s * f.dx()).powf(1.0 / p))
}

/// FFT plans for one grid size, reusable across fields.
pub struct FftEngine {
    grid: FrequencyGrid,
    forward: Arc<dyn Fft<f64>>,
    backward: Arc<dyn Fft<f64>>,
}

impl FftEngine {
    pub fn new(grid: FrequencyGrid) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            grid,
            forward: planner.plan_fft(grid.size, FftDirection::Inverse),
            backward: planner.plan_fft(grid.size, FftDirection::Forward),
        }
    }

    fn transform_axes(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        let n = self.grid.size;
        let total = data.len();
        for axis in 0..self.grid.dim {
            let stride = n.pow((self.grid.dim - 1 - axis) as u32);
            let lines = total / n;
            // line ℓ: outer block ℓ / stride, inner offset ℓ % stride
            let start = |l: usize| (l / stride) * stride * n + l % stride;
            let transformed: Vec<Vec<Complex64>> = (0..lines)
                .into_par_iter()
                .map(|l| {
                    let s = start(l);
                    let mut buf: Vec<Complex64> = (0..n).map(|i| data[s + i * stride]).collect();
                    plan.process(&mut buf);
                    buf
                })
                .collect();
            for (l, buf) in transformed.into_iter().enumerate() {
                let s = start(l);
                for (i, v) in buf.into_iter().enumerate() {
                    data[s + i * stride] = v;
                }
            }
        }
    }

    /// Fourier coefficients f̂(k/L) ≈ Σ f(x) e^{2πi ξ·x} dx.
    pub fn forward(&self, f: &ComplexField) -> Result<Vec<Complex64>> {
        self.check(f.grid)?;
        let mut data = f.data.clone();
        self.transform_axes(&mut data, &self.forward);
        let dx = f.dx();
        data.iter_mut().for_each(|z| *z *= dx);
        Ok(data)
    }

    /// Inverse of [`FftEngine::forward`].
    pub fn inverse(&self, spectrum: &[Complex64]) -> Result<ComplexField> {
        if spectrum.len() != self.grid.len() {
            return Err(Error::Shape("spectrum length does not match grid".into()));
        }
        let mut data = spectrum.to_vec();
        self.transform_axes(&mut data, &self.backward);
        let scale = 1.0 / self.grid.box_length.powi(self.grid.dim as i32);
        data.iter_mut().for_each(|z| *z *= scale);
        Ok(ComplexField { grid: self.grid, data })
    }

    pub fn apply(&self, f: &ComplexField, m: &MultiplierSymbolGrid) -> Result<ComplexField> {
        if m.grid != f.grid {
            return Err(Error::Shape("symbol and field live on different grids".into()));
        }
        let mut spec = self.forward(f)?;
        spec.iter_mut().zip(&m.values).for_each(|(s, v)| *s *= v);
        self.inverse(&spec)
    }

    fn check(&self, grid: FrequencyGrid) -> Result<()> {
        if grid != self.grid {
            return Err(Error::Shape("field grid does not match the FFT plan".into()));
        }
        Ok(())
    }
}

/// (m f̂)ˇ.
pub fn apply_symbol(f: &ComplexField, m: &MultiplierSymbolGrid) -> Result<ComplexField> {
    FftEngine::new(f.grid).apply(f, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use rand::Rng;
    use std::f64::consts::PI;

    fn random_field(grid: FrequencyGrid, seed: u64) -> ComplexField {
        let mut rng = substream(seed, 0);
        let data = (0..grid.len()).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        ComplexField::new(grid, data).unwrap()
    }

    #[test]
    fn round_trip_and_identity() {
        for dim in [1, 2, 3] {
            let grid = FrequencyGrid::new(dim, 16, 3.0).unwrap();
            let f = random_field(grid, dim as u64);
            let e = FftEngine::new(grid);
            let back = e.inverse(&e.forward(&f).unwrap()).unwrap();
            assert!(back.relative_l2_error(&f).unwrap() < 1e-14);
            let same = e.apply(&f, &MultiplierSymbolGrid::identity(grid)).unwrap();
            let err = same.data.iter().zip(&f.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn transform_sign_convention() {
        // f = e^{−2πi x/L} has f̂ concentrated at ξ = +1/L under e^{+2πiξx}
        let grid = FrequencyGrid::new(1, 16, 2.0).unwrap();
        let f = ComplexField::from_fn(grid, |x| Complex64::from_polar(1.0, -2.0 * PI * x[0] / 2.0));
        let spec = FftEngine::new(grid).forward(&f).unwrap();
        assert!((spec[1] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!(spec.iter().enumerate().filter(|(i, _)| *i != 1).all(|(_, z)| z.norm() < 1e-12));
    }

    #[test]
    fn parseval_and_scaling() {
        let grid = FrequencyGrid::square(32, 5.0).unwrap();
        let f = random_field(grid, 9);
        let spec = FftEngine::new(grid).forward(&f).unwrap();
        let l2 = lp_norm(&f, 2.0).unwrap();
        let spectral = (spec.iter().map(|z| z.norm_sqr()).sum::<f64>() / grid.box_length.powi(2)).sqrt();
        assert!((l2 - spectral).abs() < 1e-10 * l2);
        let scaled = lp_norm(&f.scale(Complex64::new(0.0, -3.0)), 3.0).unwrap();
        assert!((scaled - 3.0 * lp_norm(&f, 3.0).unwrap()).abs() < 1e-12 * scaled);
        assert!(lp_norm(&f, 0.5).is_err());
    }

    #[test]
    fn shape_errors() {
        let grid = FrequencyGrid::square(16, 1.0).unwrap();
        assert!(ComplexField::new(grid, vec![Complex64::new(0.0, 0.0); 3]).is_err());
        let other = FrequencyGrid::square(32, 1.0).unwrap();
        assert!(apply_symbol(&ComplexField::zeros(grid), &MultiplierSymbolGrid::identity(other)).is_err());
        assert!(FrequencyGrid::square(12, 1.0).is_err());
        assert!(FrequencyGrid::square(4, 1.0).is_err());
    }
}

//! Adaptive Gauss–Kronrod quadrature and Gauss–Legendre rules.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Values that can be integrated: reals and complex numbers.
pub trait QuadValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed Kronrod nodes (XGK[1], XGK[3], XGK[5], 0).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances for [`integrate`]. Refinement stops once the summed error
/// estimate is below `max(abs_tol, rel_tol * |I|)`.
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_segments: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-13, rel_tol: 1e-11, max_segments: 4000 }
    }
}

impl QuadOptions {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

/// Single G7/K15 panel on [a, b]: returns (Kronrod estimate, |K15 − G7|).
pub fn gauss_kronrod_15<T: QuadValue>(f: &impl Fn(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let pair = f1 + f2;
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let k = kronrod * half;
    let g = gauss * half;
    (k, (k - g).magnitude())
}

/// Globally adaptive integration of `f` over [a, b] with optional interior
/// breakpoints (singularities, kinks) that seed the initial partition.
pub fn integrate_with_breaks<T: QuadValue>(
    f: impl Fn(f64) -> T,
    a: f64,
    b: f64,
    breaks: &[f64],
    opts: QuadOptions,
) -> Result<QuadResult<T>> {
    let mut points = vec![a];
    points.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    points.push(b);
    points.sort_by(f64::total_cmp);
    points.dedup();

    let mut segments: Vec<Segment<T>> = points
        .windows(2)
        .map(|w| {
            let (value, error) = gauss_kronrod_15(&f, w[0], w[1]);
            Segment { a: w[0], b: w[1], value, error }
        })
        .collect();
    let mut evaluations = 15 * segments.len();

    loop {
        let total = segments.iter().fold(T::default(), |acc, s| acc + s.value);
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !total.magnitude().is_finite() || !error.is_finite() {
            return Err(Error::NonFinite("quadrature integrand".into()));
        }
        if error <= opts.abs_tol.max(opts.rel_tol * total.magnitude()) {
            return Ok(QuadResult { value: total, error, evaluations });
        }
        if segments.len() >= opts.max_segments {
            return Err(Error::Quadrature { estimate: total.magnitude(), error });
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("at least one segment");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Interval collapsed to adjacent floats; accept what we have.
            return Ok(QuadResult { value: total, error, evaluations });
        }
        for (lo, hi) in [(seg.a, mid), (mid, seg.b)] {
            let (value, error) = gauss_kronrod_15(&f, lo, hi);
            segments.push(Segment { a: lo, b: hi, value, error });
        }
        evaluations += 30;
    }
}

pub fn integrate<T: QuadValue>(
    f: impl Fn(f64) -> T,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<QuadResult<T>> {
    integrate_with_breaks(f, a, b, &[], opts)
}

/// ∫_a^∞ f via the map x = a + t/(1 − t).
pub fn integrate_to_infinity<T: QuadValue>(
    f: impl Fn(f64) -> T,
    a: f64,
    opts: QuadOptions,
) -> Result<QuadResult<T>> {
    integrate(
        |t| {
            let s = 1.0 - t;
            f(a + t / s) * (1.0 / (s * s))
        },
        0.0,
        1.0,
        opts,
    )
}

/// ∫_{−∞}^b f via the map x = b − t/(1 − t).
pub fn integrate_from_neg_infinity<T: QuadValue>(
    f: impl Fn(f64) -> T,
    b: f64,
    opts: QuadOptions,
) -> Result<QuadResult<T>> {
    integrate_to_infinity(|x| f(2.0 * b - x), b, opts)
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_are_exact_on_one_panel() {
        let (v, err) = gauss_kronrod_15(&|x: f64| x.powi(10) - 3.0 * x.powi(3), -1.0, 2.0);
        let exact = (2f64.powi(11) + 1.0) / 11.0 - 0.75 * (16.0 - 1.0);
        assert!((v - exact).abs() < 1e-12);
        assert!(err < 1e-10);
    }

    #[test]
    fn log_singularity_and_semi_infinite_tail() {
        let opts = QuadOptions::default();
        let r = integrate(|x: f64| -x.ln(), 0.0, 1.0, opts).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        let r = integrate_to_infinity(|x: f64| 1.0 / (1.0 + x * x), 0.0, opts).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-11);
        let r = integrate_from_neg_infinity(|x: f64| x.exp(), 0.0, opts).unwrap();
        assert!((r.value - 1.0).abs() < 1e-11);
    }

    #[test]
    fn complex_integrand() {
        let r = integrate(|t: f64| Complex64::from_polar(1.0, t), 0.0, PI, QuadOptions::default())
            .unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn kink_handled_by_breakpoint() {
        let r = integrate_with_breaks(|x: f64| (x - 0.3).abs(), 0.0, 1.0, &[0.3], QuadOptions::default())
            .unwrap();
        assert!((r.value - (0.045 + 0.245)).abs() < 1e-14);
        assert!(r.evaluations <= 30);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let opts = QuadOptions { abs_tol: 0.0, rel_tol: 0.0, max_segments: 4 };
        let err = integrate(|x: f64| x.sin() * (50.0 * x).cos(), 0.0, 10.0, opts).unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
    }

    #[test]
    fn gauss_legendre_rule() {
        for n in [1, 2, 5, 16, 512] {
            let (x, w) = gauss_legendre(n);
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-12, "n = {n}");
            // exact for degree 2n − 1
            let deg = 2 * n - 1;
            let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((approx - exact).abs() < 1e-12, "n = {n}");
        }
    }
}

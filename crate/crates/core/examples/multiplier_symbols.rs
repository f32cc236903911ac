//! Riesz, Beurling–Ahlfors, constant-matrix and Laplace-transform symbols,
//! cross-checked against each other and applied to a test field.
//!
//! cargo run --release --example multiplier_symbols -- [grid]

use burkholder::multiplier::{
    apply_symbol, lp_norm, symbol_beurling, symbol_constant_matrix, symbol_laplace_heat,
    symbol_laplace_heat_quadrature, symbol_laplace_poisson_quadrature, symbol_riesz, symbol_second_riesz,
    ComplexField, FrequencyGrid, LaplaceProfile, MultiplierSymbolGrid,
};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::time::Instant;

fn max_gap(a: &MultiplierSymbolGrid, b: &MultiplierSymbolGrid) -> f64 {
    a.values.iter().zip(&b.values).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn main() -> burkholder::Result<()> {
    let size: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(256);
    let grid = FrequencyGrid::square(size, 1.0)?;
    let c = |re: f64, im: f64| Complex64::new(re, im);

    let b = symbol_beurling(grid)?;
    let (r11, r12, r22) = (symbol_second_riesz(grid, 0, 0)?, symbol_second_riesz(grid, 0, 1)?, symbol_second_riesz(grid, 1, 1)?);
    let combo = MultiplierSymbolGrid::combine(&[(c(1.0, 0.0), &r22), (c(-1.0, 0.0), &r11), (c(0.0, 2.0), &r12)])?;
    println!("B vs R₂² − R₁² + 2iR₁R₂: max gap {:.2e}", max_gap(&b, &combo));

    let r1 = symbol_riesz(grid, 0)?;
    // odd symbols vanish on the Nyquist lines, so compare R₁·R₁ with R₁₁ away from them
    let square = r1.compose(&r1)?;
    let nyq = -(size as i64) / 2;
    let off_nyquist = (0..grid.len())
        .filter(|&flat| !grid.wavenumbers(flat).contains(&nyq))
        .map(|flat| (square.values[flat] - r11.values[flat]).norm())
        .fold(0.0, f64::max);
    println!("R₁·R₁ vs second-order R₁₁ off the Nyquist lines: max gap {off_nyquist:.2e}");

    let bmat = [c(1.0, 0.0), c(0.0, -1.0), c(0.0, -1.0), c(-1.0, 0.0)];
    let from_matrix = symbol_constant_matrix(grid, &bmat)?;
    println!("constant matrix [[1, −i], [−i, −1]] vs B: max gap {:.2e} (matrix norm {:.3})", max_gap(&from_matrix, &b), from_matrix.bound);

    for gamma in [0.5, 2.0] {
        let start = Instant::now();
        let profile = LaplaceProfile::ImaginaryPower { gamma };
        let heat = symbol_laplace_heat_quadrature(grid, &profile)?;
        let poisson = symbol_laplace_poisson_quadrature(grid, &profile)?;
        let exact = MultiplierSymbolGrid::from_fn(grid, c(0.0, 0.0), 1.0, |xi| {
            let s = 4.0 * PI * PI * (xi[0] * xi[0] + xi[1] * xi[1]);
            Complex64::from_polar(1.0, gamma * s.ln())
        });
        println!(
            "(−Δ)^{{iγ}}, γ = {gamma}: heat quadrature gap {:.2e}, Poisson quadrature gap {:.2e} ({:.2} s)",
            max_gap(&heat, &exact),
            max_gap(&poisson, &exact),
            start.elapsed().as_secs_f64()
        );
        debug_assert!(max_gap(&symbol_laplace_heat(grid, &profile)?, &exact) < 1e-12);
    }

    // a(t) = cos(t/τ): s²/(s² + τ⁻²) with s = 4π²|ξ|²
    let tau = 1e-4;
    let profile = LaplaceProfile::Custom { a: std::sync::Arc::new(move |t| Complex64::from((t / tau).cos())), sup: 1.0 };
    let m = symbol_laplace_heat(grid, &profile)?;
    let exact = MultiplierSymbolGrid::from_fn(grid, c(0.0, 0.0), 1.0, |xi| {
        let s = 4.0 * PI * PI * (xi[0] * xi[0] + xi[1] * xi[1]);
        c(s * s / (s * s + 1.0 / (tau * tau)), 0.0)
    });
    println!("heat profile cos(t/τ), τ = {tau}: max gap {:.2e}", max_gap(&m, &exact));

    // B is an L² isometry on mean-zero fields; its L^p ratios sit below p* − 1
    let mut f = ComplexField::from_fn(grid, |x| {
        let r2 = (x[0] - 0.5).powi(2) + (x[1] - 0.45).powi(2);
        c((x[0] - 0.5) * (-r2 / 0.01).exp(), 0.0)
    });
    f.subtract_mean();
    let bf = apply_symbol(&f, &b)?;
    for p in [2.0, 4.0] {
        println!("‖Bf‖_{p} / ‖f‖_{p} = {:.6}", lp_norm(&bf, p)? / lp_norm(&f, p)?);
    }
    Ok(())
}

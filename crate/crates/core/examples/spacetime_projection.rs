//! Monte Carlo space-time projection S_A f against its exact Fourier
//! multiplier, for A = identity, A = diag(1, −1) and the Beurling matrix.
//!
//! cargo run --release --example spacetime_projection -- [paths] [grid] [steps]

use burkholder::martingale::{spacetime_projection_estimate, SpacetimeSpec};
use burkholder::multiplier::{ComplexField, FrequencyGrid};
use num_complex::Complex64;
use std::time::Instant;

fn main() -> burkholder::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let paths: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(200_000);
    let size: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(32);
    let steps: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(96);
    let grid = FrequencyGrid::square(size, 1.0)?;

    // Two opposite Gaussian bumps; the mean is removed exactly.
    let mut f = ComplexField::from_fn(grid, |x| {
        let bump = |cx: f64, cy: f64| (-((x[0] - cx).powi(2) + (x[1] - cy).powi(2)) / (2.0 * 0.12f64.powi(2))).exp();
        Complex64::new(bump(0.35, 0.4) - bump(0.65, 0.6), 0.0)
    });
    f.subtract_mean();

    let c = |re: f64, im: f64| Complex64::new(re, im);
    let cases = [
        ("identity", [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        ("diag(1,-1)", [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]),
        ("beurling", [c(1.0, 0.0), c(0.0, -1.0), c(0.0, -1.0), c(-1.0, 0.0)]),
    ];
    println!("{paths} paths on a {size}x{size} grid, T = 1");
    println!("{:<12} {:>10} {:>9} {:>8}", "A", "rel_error", "coverage", "secs");
    for (name, a) in cases {
        let start = Instant::now();
        let est = spacetime_projection_estimate(&f, a, 1.0, &SpacetimeSpec { n_steps: steps, ..SpacetimeSpec::new(paths, 2024) })?;
        println!(
            "{:<12} {:>10.4} {:>9.3} {:>8.2}",
            name,
            est.rel_error,
            est.coverage,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}

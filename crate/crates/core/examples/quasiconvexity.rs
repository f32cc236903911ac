//! Random search for deformations that make Ψ_U fail quasiconvexity, and
//! the Riesz-transform integrals ∫U(f, 2R₁R₂f) and ∫U(f, (R₁² − R₂²)f).
//!
//! cargo run --release --example quasiconvexity -- [trials]

use burkholder::constants::ExponentContext;
use burkholder::convexity::{
    quasiconvexity_functional, quasiconvexity_probe, riesz_integrand_probe, DeformationFamily, DeformationField,
    FieldParams, QuasiconvexityConfig,
};
use burkholder::functions::Matrix2;
use burkholder::multiplier::{ComplexField, FrequencyGrid};
use num_complex::Complex64;

fn main() -> burkholder::Result<()> {
    let trials: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let cfg = QuasiconvexityConfig::new(trials, 5);
    for p in [1.5, 3.0, 4.0] {
        let ctx = ExponentContext::new(p)?;
        for family in [DeformationFamily::Trigonometric, DeformationFamily::RadialBump] {
            let r = quasiconvexity_probe(&ctx, Matrix2::IDENTITY, family, &cfg)?;
            println!(
                "p = {p}, {family:?}: min Q = {:.4e} (at 2× resolution {:.4e}), candidate: {}",
                r.min_value, r.reverified_value, r.violation_candidate
            );
        }
    }

    // the Lehto map itself, as a deformation of the identity
    let ctx = ExponentContext::new(4.0)?;
    let field = DeformationField::sample(
        FieldParams::LehtoType { theta: 0.5, p: 4.0, inner_radius: 0.3, outer_ratio: 2.0 },
        128,
    )?;
    println!("Lehto deformation at p = 4: Q = {:.4e}", quasiconvexity_functional(&field, Matrix2::IDENTITY, &ctx));

    let grid = FrequencyGrid::square(128, 1.0)?;
    let mut f = ComplexField::from_fn(grid, |x| {
        let r2 = (x[0] - 0.5).powi(2) + (x[1] - 0.5).powi(2);
        Complex64::new((-r2 / 0.02).exp(), 0.5 * (x[0] - 0.5) * (-r2 / 0.01).exp())
    });
    f.subtract_mean();
    for p in [3.0, 4.0] {
        let (mixed, diff) = riesz_integrand_probe(&f, &ExponentContext::new(p)?)?;
        println!("p = {p}: ∫U(f, 2R₁R₂f) = {mixed:.4e}, ∫U(f, (R₁² − R₂²)f) = {diff:.4e}");
    }
    Ok(())
}

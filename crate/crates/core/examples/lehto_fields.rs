//! Lehto's maps: the ‖∂f‖_p / ‖∂̄f‖_p ratio against its closed form, the
//! integrals of U and Ũ, and the approach of the ratio to p − 1 as θ → 1.
//!
//! cargo run --release --example lehto_fields

use burkholder::lehto::{integral_u_lehto, integral_umin_lehto, lehto_ratio, umin_closed_form, LehtoParams};
use burkholder::multiplier::probe::lehto_test_field;
use burkholder::multiplier::{apply_symbol, symbol_beurling, FrequencyGrid};

fn main() -> burkholder::Result<()> {
    println!("{:>4} {:>5} {:>12} {:>12} {:>10} {:>12} {:>12}", "p", "θ", "ratio", "closed", "∫U/mass", "∫Ũ", "closed");
    for p in [2.5, 3.0, 4.0, 6.0] {
        for theta in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let params = LehtoParams::new(theta, p)?;
            let r = lehto_ratio(&params)?;
            let iu = integral_u_lehto(&params)?;
            let um = integral_umin_lehto(&params)?;
            println!(
                "{:>4} {:>5} {:>12.9} {:>12.9} {:>10.2e} {:>12.6} {:>12.6}",
                p,
                theta,
                r.numeric,
                r.closed_form,
                iu.value / iu.abs_mass,
                um.numeric,
                um.closed_form
            );
        }
    }

    println!("\nθ → 1 at p = 4 (p − 1 = 3):");
    for theta in [0.9, 0.99, 0.999, 0.9999, 0.99999] {
        let r = lehto_ratio(&LehtoParams::new(theta, 4.0)?)?;
        println!("  θ = {theta:<8} ratio {:.6} (closed form {:.6})", r.numeric, r.closed_form);
    }
    println!("π[p(1−1/p)^(p−1) − (p−1)^(p−1)] at p = 4: {:.6}", umin_closed_form(4.0));

    // sampled Lehto-type fields: B maps ∂̄f to ∂f on the grid
    let grid = FrequencyGrid::square(256, 1.0)?;
    let (input, target) = lehto_test_field(grid, 0.8, 4.0, 3.0, 2.0)?;
    let out = apply_symbol(&input, &symbol_beurling(grid)?)?;
    println!("\nsampled field, 256²: ‖B∂̄f − ∂f‖₂ / ‖∂f‖₂ = {:.3e}", out.relative_l2_error(&target)?);
    Ok(())
}

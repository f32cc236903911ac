//! Lower bounds for ‖T_m‖_p from random test fields, against the known
//! upper bounds: cot(π/2p*) for R_j, p* − 1 for R_j² and 1.575(p* − 1)
//! for the Beurling–Ahlfors operator.
//!
//! cargo run --release --example operator_probe -- [grid] [trials]

use burkholder::cli::known_ceiling;
use burkholder::multiplier::{
    operator_ratio_probe, symbol_beurling, symbol_riesz, symbol_second_riesz, FrequencyGrid, ProbeConfig,
    ProbeFamily,
};

fn main() -> burkholder::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let size: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(256);
    let trials: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(32);
    let grid = FrequencyGrid::square(size, 1.0)?;
    let p = 4.0;
    let symbols = [
        ("riesz1", symbol_riesz(grid, 0)?),
        ("riesz11", symbol_second_riesz(grid, 0, 0)?),
        ("beurling", symbol_beurling(grid)?),
    ];
    let families = [
        ("bumps", ProbeFamily::Bumps),
        ("band", ProbeFamily::BandLimited { max_wavenumber: 8 }),
        ("lehto", ProbeFamily::LehtoType { theta_min: 0.5, theta_max: 0.99, p, log_range: 3.0 }),
    ];
    println!("p = {p}, {size}x{size} grid, {trials} fields per family");
    println!("{:<9} {:<6} {:>10} {:>9} {:>9}", "symbol", "family", "max ratio", "ceiling", "exceeded");
    for (name, m) in &symbols {
        for (fname, family) in families {
            let cfg = ProbeConfig { trials, seed: 3, blocks: 8, family, ceiling: known_ceiling(name, p)? };
            let r = operator_ratio_probe(m, p, &cfg)?;
            println!(
                "{:<9} {:<6} {:>10.4} {:>9.4} {:>9}",
                name,
                fname,
                r.max_ratio,
                r.ceiling.unwrap_or(f64::NAN),
                r.exceeded_ceiling
            );
        }
    }
    Ok(())
}

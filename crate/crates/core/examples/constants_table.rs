//! The sharp constants side by side, with the Davis constant and D_p.
//!
//! cargo run --release --example constants_table -- [p,p,...] [out.csv]

use burkholder::constants::{cot_constant, davis_d1, osekowski_c1p, weak_dp};
use burkholder::report::{constants_pretty, constants_table, write_constants_csv};
use burkholder::special::catalan;

fn main() -> burkholder::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let p_list: Vec<f64> = match args.get(1) {
        Some(s) => s.split(',').map(|t| t.trim().parse().expect("p values must be numbers")).collect(),
        None => vec![1.1, 1.5, 2.0, 3.0, 4.0, 6.0, 10.0],
    };
    println!("Catalan G = {:.15}", catalan());
    println!("Davis D_1 = π²/(8G) = {:.13}, D_p at p = 1 by quadrature = {:.13}", davis_d1(), weak_dp(1.0)?);
    for p in [1.25, 1.5, 1.75, 2.0] {
        println!("D_{p} = {:.10}", weak_dp(p)?);
    }
    println!();
    let rows = constants_table(&p_list)?;
    print!("{}", constants_pretty(&rows));
    println!();
    // Riesz transforms are strictly better than martingale transforms away from p = 2
    for &p in &p_list {
        let ps = if p > 2.0 { p } else { p / (p - 1.0) };
        println!("p = {p:>4}: cot(π/2p*) / (p*−1) = {:.6}, C_1p = {:.6}", cot_constant(p)? / (ps - 1.0), osekowski_c1p(p)?);
    }
    if let Some(path) = args.get(2) {
        write_constants_csv(&rows, std::fs::File::create(path)?)?;
        println!("wrote {path}");
    }
    Ok(())
}

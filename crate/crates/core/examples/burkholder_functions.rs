//! Burkholder's V, U and Ũ: the pointwise identities, Pichorides' function,
//! Ψ_U against its explicit form and the weak-type function.
//!
//! cargo run --release --example burkholder_functions -- [samples]

use burkholder::constants::{weak_dp, ExponentContext};
use burkholder::functions::{
    eval_pichorides, eval_psi_u, eval_psi_u_explicit, eval_u, eval_u_min, eval_v, eval_v_pichorides,
    eval_weaktype_w, identity_scan, Matrix2, PlanePoint,
};
use std::f64::consts::PI;

fn main() -> burkholder::Result<()> {
    let samples: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200_000);

    println!("{:>5} {:>9} {:>11} {:>10} {:>12}", "p", "samples", "V≤Ũ≤U fail", "U≤0 fail", "|U−V| at 2");
    for p in [1.2, 1.5, 2.0, 3.0, 4.0, 8.0] {
        let r = identity_scan(&ExponentContext::new(p)?, samples, 17, 16)?;
        let gap = r.max_p2_gap.map_or("-".to_string(), |g| format!("{g:.2e}"));
        println!("{:>5} {:>9} {:>11} {:>10} {:>12}", p, r.samples, r.order_violations, r.sign_violations, gap);
    }

    // along the ray y = t·x, U changes sign exactly on the cone t = p* − 1
    let ctx = ExponentContext::new(3.0)?;
    let x = PlanePoint::new(1.0, 0.0);
    println!("\np = 3, x = 1: t, V(x, t), Ũ(x, t), U(x, t)");
    for t in [0.0, 1.0, 1.5, 2.0, 2.5, 4.0] {
        let y = PlanePoint::new(0.0, t);
        println!("  {t:>4}  {:>10.4} {:>10.4} {:>10.4}", eval_v(x, y, &ctx), eval_u_min(x, y, &ctx), eval_u(x, y, &ctx));
    }

    // Pichorides: P ≥ |y|^p − sec^p(π/2p)|x|^p for 1 < p ≤ 2
    for p in [1.25, 1.5, 2.0] {
        let ctx = ExponentContext::new(p)?;
        let mut worst = f64::INFINITY;
        for i in 0..=360 {
            let t = 2.0 * PI * i as f64 / 360.0;
            let (x, y) = (t.cos(), t.sin());
            worst = worst.min(eval_pichorides(x, y, &ctx)? - eval_v_pichorides(x, y, &ctx));
        }
        println!("Pichorides p = {p}: min (P − V) on the unit circle = {worst:.3e}");
    }

    let ctx = ExponentContext::new(4.0)?;
    let m = Matrix2::new(1.0, 0.3, -0.2, 1.7);
    println!("\nΨ_U(A) at p = 4: via Γ {:.14}, explicit {:.14}", eval_psi_u(m, &ctx), eval_psi_u_explicit(m, &ctx));

    // W(x, y) = 1{|y| ≥ 1} − c^p|x|^p with c = D_p^{1/p}; W(x, ±x) ≤ 0 is the base case
    let p = 1.5;
    let c = weak_dp(p)?.powf(1.0 / p);
    let w_max = (1..=200)
        .map(|i| {
            let r = i as f64 / 100.0;
            eval_weaktype_w(PlanePoint::new(r, 0.0), PlanePoint::new(0.0, r), c, p)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    println!("weak-type W on |y| = |x| at p = {p}: max {w_max:.4}");
    Ok(())
}

//! Exact martingale transforms on dyadic trees: ratios against p* − 1, the
//! supermartingale property of U along the paths, Haar/Paley sign changes,
//! and a hill-climbing search for near-extremal trees.
//!
//! cargo run --release --example dyadic_transforms -- [cases]

use burkholder::constants::ExponentContext;
use burkholder::martingale::{
    exhaustive_transform_ratio, haar_paley_check, haar_paley_fuzz, near_extremal_search, supermartingale_check,
    transform_fuzz, DyadicTree, TransformKind, TransformSpec,
};
use burkholder::functions::PlanePoint;

fn main() -> burkholder::Result<()> {
    let cases: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);

    // two steps: f = 1 ± 1 then ± 1, g flips the sign of the second step
    let one = PlanePoint::new(1.0, 0.0);
    let tree = DyadicTree::new(one, vec![one, one, one])?;
    let spec = TransformSpec::scalar(TransformKind::Signs, &[1.0, 1.0, -1.0, -1.0])?;
    let ctx = ExponentContext::new(3.0)?;
    println!("hand tree at p = 3: ‖g‖/‖f‖ = {:.6}", exhaustive_transform_ratio(&tree, &spec, 3.0)?);
    let sm = supermartingale_check(&tree, &spec, &ctx)?;
    println!("  E U(f_k, g_k) = {:?}, pass {}", sm.eu, sm.pass);

    let kinds = [TransformKind::Signs, TransformKind::Interval, TransformKind::Choi, TransformKind::Matrix];
    for p in [1.5, 3.0, 6.0] {
        let r = transform_fuzz(p, cases, 4, &kinds, 21, 16)?;
        println!(
            "fuzz p = {p}: {} cases, max ratio {:.4} vs {:.4}, ratio violations {}, supermartingale violations {}",
            r.cases, r.max_ratio, r.ceiling, r.ratio_violations, r.supermartingale_violations
        );
        let h = haar_paley_fuzz(p, cases, 32, 22)?;
        println!("  Haar/Paley: max ratio {:.4} vs {:.4}, violations {}", h.max_ratio, h.bound, h.violations);
    }
    let (lhs, rhs) = haar_paley_check(&[0.0, 1.0, 0.5, -0.5], &[1.0, -1.0, 1.0, -1.0], 4.0)?;
    println!("Haar example at p = 4: ‖Σ ε_n a_n h_n‖ = {lhs:.6} ≤ {rhs:.6}");

    let search = near_extremal_search(4.0, 8, 3000, 9)?;
    println!(
        "near-extremal search p = 4, depth 8: best ratio {:.4} of p* − 1 = {:.1} after {} iterations",
        search.best_ratio, search.ceiling, search.iterations
    );
    Ok(())
}

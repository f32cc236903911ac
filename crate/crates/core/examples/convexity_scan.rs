//! Biconcavity of U and rank-one convexity of Ψ_U over random probes.
//!
//! ```text
//! cargo run --release --example convexity_scan -- 100000
//! ```

use burkholder::constants::ExponentContext;
use burkholder::convexity::{
    biconcavity_scan, planted_counterexample, rank_one_scan, rank_one_scan_with, ratio_consistency_scan,
    ScanConfig,
};

fn main() -> burkholder::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let cfg = ScanConfig::new(samples, 7);
    println!("{:>5} {:>10} {:>14} {:>10} {:>14}", "p", "function", "min margin", "violations", "Γ gap");
    for p in [1.2, 1.5, 2.0, 3.0, 4.0, 8.0] {
        let ctx = ExponentContext::new(p)?;
        for report in [biconcavity_scan(&ctx, &cfg)?, rank_one_scan(&ctx, &cfg)?] {
            let gap = report.correspondence_gap.map_or("-".to_string(), |g| format!("{g:.2e}"));
            println!(
                "{:>5} {:>10} {:>14.6e} {:>10} {:>14}",
                p, report.function, report.min_value, report.violations, gap
            );
        }
    }

    let planted = planted_counterexample(10.0);
    let control = rank_one_scan_with("det-10|A|^2", 0.0, &planted, &ScanConfig::new(1000, 1))?;
    println!("planted control: {} of {} probes flagged", control.violations, control.samples);

    let ratio = ratio_consistency_scan(&ExponentContext::new(4.0)?, 1000, 3)?;
    println!(
        "G''/-(A+B+C) at p = 4: mean {:.10}, relative spread {:.2e}",
        ratio.mean, ratio.relative_spread
    );
    Ok(())
}

//! Lévy multipliers against their closed forms: the α-stable circle example,
//! the four-point Gaussian example, Marcinkiewicz-type axis multipliers, the
//! finite-horizon limit and the Gaussian floor scan.
//!
//! cargo run --release --example levy_multipliers -- [grid]

use burkholder::multiplier::levy::StableAngular;
use burkholder::multiplier::{
    gaussian_floor_scan, symbol_beurling, symbol_levy, symbol_levy_finite_t, FrequencyGrid, GaussianPart, JumpAtom,
    JumpPart, LevySpec, MultiplierSymbolGrid, SphereAtom, Transform,
};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;
use std::time::Instant;

fn max_gap(a: &MultiplierSymbolGrid, b: &MultiplierSymbolGrid) -> f64 {
    a.values.iter().zip(&b.values).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn main() -> burkholder::Result<()> {
    let size: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(256);
    let grid = FrequencyGrid::square(size, 1.0)?;
    let beurling = symbol_beurling(grid)?;
    let c = |re: f64, im: f64| Complex64::new(re, im);

    // isotropic α-stable jumps with φ(e^{it}) = e^{−2it}: M = α/(α+2) · ξ̄²/|ξ|²
    let start = Instant::now();
    for alpha in [0.5, 1.0, 1.5] {
        let spec = LevySpec {
            dim: 2,
            drift: vec![],
            gaussian: GaussianPart::None,
            jumps: JumpPart::Stable { alpha, angular: StableAngular::UniformCircle { nodes_per_arc: 512 } },
            phi: Transform::AngularCharacter(-2),
            psi: Transform::one(),
        };
        let m = symbol_levy(grid, &spec)?;
        let gap = max_gap(&m, &beurling.scale(c(alpha / (alpha + 2.0), 0.0)));
        println!("stable α = {alpha}: max |M − α/(α+2)·B| = {gap:.2e}, sup|M| = {:.4}", m.sup_norm());
    }
    println!("  ({:.2} s)", start.elapsed().as_secs_f64());

    // Gaussian part with mass at 1, i, e^{−iπ/4}, e^{iπ/4} and ψ = (1, −1, i, −i)
    let h = FRAC_1_SQRT_2;
    let spec = LevySpec {
        dim: 2,
        drift: vec![],
        gaussian: GaussianPart::Atoms(vec![
            SphereAtom { theta: vec![1.0, 0.0], weight: 1.0 },
            SphereAtom { theta: vec![0.0, 1.0], weight: 1.0 },
            SphereAtom { theta: vec![h, -h], weight: 1.0 },
            SphereAtom { theta: vec![h, h], weight: 1.0 },
        ]),
        jumps: JumpPart::None,
        phi: Transform::one(),
        psi: Transform::PerAtom(vec![c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)]),
    };
    let m = symbol_levy(grid, &spec)?;
    println!("four-point Gaussian: max |M − B/2| = {:.2e}", max_gap(&m, &beurling.scale(c(0.5, 0.0))));

    // α-stable atoms on the axes: M = |ξ₁|^α / (|ξ₁|^α + |ξ₂|^α)
    for alpha in [0.7, 1.0, 1.8] {
        let spec = LevySpec {
            dim: 2,
            drift: vec![],
            gaussian: GaussianPart::None,
            jumps: JumpPart::Stable {
                alpha,
                angular: StableAngular::Atoms(vec![
                    SphereAtom { theta: vec![1.0, 0.0], weight: 1.0 },
                    SphereAtom { theta: vec![0.0, 1.0], weight: 1.0 },
                ]),
            },
            phi: Transform::PerAtom(vec![c(1.0, 0.0), c(0.0, 0.0)]),
            psi: Transform::one(),
        };
        let m = symbol_levy(grid, &spec)?;
        let exact = MultiplierSymbolGrid::from_fn(grid, c(0.0, 0.0), 1.0, |xi| {
            let a = xi[0].abs().powf(alpha);
            c(a / (a + xi[1].abs().powf(alpha)), 0.0)
        });
        println!("axis atoms α = {alpha}: max |M − closed form| = {:.2e}", max_gap(&m, &exact));
    }

    // compound Poisson: m_T = (1 − e^{2Tρ}) M tends to M once e^{2Tρ} is negligible
    let atoms = vec![
        JumpAtom { x: vec![0.31, 0.0], weight: 3.0 },
        JumpAtom { x: vec![0.0, 0.17], weight: 1.0 },
        JumpAtom { x: vec![0.23, 0.41], weight: 0.5 },
    ];
    let rho_min = (1..grid.len())
        .map(|flat| {
            let xi = grid.frequency(flat);
            atoms.iter().map(|a| a.weight * (1.0 - (xi[0] * a.x[0] + xi[1] * a.x[1]).cos())).sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min);
    let spec = LevySpec {
        dim: 2,
        drift: vec![],
        gaussian: GaussianPart::None,
        jumps: JumpPart::Atoms(atoms),
        phi: Transform::PerAtom(vec![c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0)]),
        psi: Transform::one(),
    };
    let limit = symbol_levy(grid, &spec)?;
    let t_big = 14.0 / rho_min;
    for t in [0.1, 1.0, 10.0, t_big] {
        let mt = symbol_levy_finite_t(grid, &spec, t)?;
        println!("finite horizon T = {t:>10.4e}: max |m_T − M| = {:.2e}", max_gap(&mt, &limit));
    }
    println!("  (min |ρ| on the lattice = {rho_min:.3e}, so e^{{2Tρ}} ≤ e^{{-28}} at the last T)");

    let scan = gaussian_floor_scan(2000, 11, 16)?;
    println!(
        "Gaussian floor scan: {} configurations, {} reproduce M = c·ξ̄²/|ξ|², min |c| = {:.6}, violations {}",
        scan.configurations, scan.reproducing, scan.min_abs_c, scan.violations
    );
    Ok(())
}

//! Property tests over random inputs.

use burkholder::constants::{choi_bracket, cot_constant, csc_constant, p_star, ExponentContext};
use burkholder::functions::{eval_psi_u, eval_psi_u_explicit, eval_u, eval_u_min, eval_v, Matrix2, PlanePoint};
use burkholder::martingale::{
    exhaustive_transform_ratio, haar_paley_check, supermartingale_check, DyadicTree, TransformKind, TransformSpec,
};
use burkholder::multiplier::io::{read_container, write_container};
use burkholder::multiplier::{apply_symbol, lp_norm, symbol_beurling, ComplexField, FrequencyGrid};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![1.05..2.0f64, 2.0..12.0f64]
}

fn point() -> impl Strategy<Value = PlanePoint> {
    (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b)| PlanePoint::new(a, b))
}

fn slack(x: PlanePoint, y: PlanePoint, ctx: &ExponentContext) -> f64 {
    1e-12 * (x.norm() + y.norm()).powf(ctx.p) * (1.0 + (ctx.p_star - 1.0).powf(ctx.p))
}

proptest! {
    #[test]
    fn majorants_are_ordered(p in exponent(), x in point(), y in point()) {
        let ctx = ExponentContext::new(p).unwrap();
        let (v, um, u) = (eval_v(x, y, &ctx), eval_u_min(x, y, &ctx), eval_u(x, y, &ctx));
        let s = slack(x, y, &ctx);
        prop_assert!(v <= um + s && um <= u + s, "V = {v}, Ũ = {um}, U = {u}");
    }

    #[test]
    fn u_is_nonpositive_below_the_diagonal(p in exponent(), x in point(), t in 0.0..=1.0f64, angle in 0.0..6.3f64) {
        let ctx = ExponentContext::new(p).unwrap();
        let y = PlanePoint::new(t * x.norm(), 0.0).rotate(angle);
        prop_assert!(eval_u(x, y, &ctx) <= slack(x, y, &ctx));
    }

    #[test]
    fn u_is_homogeneous(p in exponent(), x in point(), y in point(), s in 0.1..10.0f64) {
        let ctx = ExponentContext::new(p).unwrap();
        let lhs = eval_u(x * s, y * s, &ctx);
        let rhs = s.powf(p) * eval_u(x, y, &ctx);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + rhs.abs()));
    }

    #[test]
    fn psi_u_matches_its_explicit_form(p in exponent(), e in prop::array::uniform4(-3.0..3.0f64)) {
        let ctx = ExponentContext::new(p).unwrap();
        let m = Matrix2::new(e[0], e[1], e[2], e[3]);
        let (a, b) = (eval_psi_u(m, &ctx), eval_psi_u_explicit(m, &ctx));
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn constants_are_ordered(p in exponent()) {
        let ps = p_star(p).unwrap();
        prop_assert!((ps - p_star(p / (p - 1.0)).unwrap()).abs() <= 1e-13 * ps);
        let cot = cot_constant(p).unwrap();
        prop_assert!(cot <= ps - 1.0 + 1e-12);
        prop_assert!(csc_constant(p).unwrap() >= cot);
        let (lo, hi) = choi_bracket(p).unwrap();
        prop_assert!(lo <= hi);
    }

    #[test]
    fn transforms_respect_the_sharp_constant(p in exponent(), depth in 1usize..=5, seed in any::<u64>(), kind in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = [TransformKind::Signs, TransformKind::Interval, TransformKind::Choi, TransformKind::Matrix][kind];
        let tree = DyadicTree::random(depth, kind == TransformKind::Matrix, &mut rng).unwrap();
        let spec = TransformSpec::random(kind, depth, &mut rng);
        let ctx = ExponentContext::new(p).unwrap();
        let ratio = exhaustive_transform_ratio(&tree, &spec, p).unwrap();
        prop_assert!(ratio <= spec.ceiling(&ctx) * (1.0 + 1e-12), "ratio {ratio}");
        if kind != TransformKind::Choi {
            prop_assert!(supermartingale_check(&tree, &spec, &ctx).unwrap().pass);
        }
    }

    #[test]
    fn haar_sign_changes_are_bounded(p in exponent(), coeffs in prop::collection::vec(-1.0..1.0f64, 1..40), seed in any::<u64>()) {
        let signs: Vec<f64> = (0..coeffs.len()).map(|i| if (seed >> (i % 64)) & 1 == 1 { 1.0 } else { -1.0 }).collect();
        let (lhs, rhs) = haar_paley_check(&coeffs, &signs, p).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn containers_round_trip(values in prop::collection::vec((-1e6..1e6f64, -1e6..1e6f64), 64)) {
        let grid = FrequencyGrid::square(8, 2.5).unwrap();
        let data: Vec<Complex64> = values.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        let mut buf = Vec::new();
        write_container(&mut buf, &grid, &data).unwrap();
        let (g, back) = read_container(buf.as_slice(), 2.5).unwrap();
        prop_assert_eq!(g, grid);
        prop_assert_eq!(back, data);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn beurling_is_an_l2_isometry_without_nyquist_modes(coeffs in prop::collection::vec((-7i64..8, -7i64..8, -1.0..1.0f64, -1.0..1.0f64), 1..6)) {
        let grid = FrequencyGrid::square(16, 1.0).unwrap();
        let f = ComplexField::from_fn(grid, |x| {
            coeffs
                .iter()
                .filter(|c| (c.0, c.1) != (0, 0))
                .map(|&(k1, k2, a, b)| {
                    Complex64::new(a, b) * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (k1 as f64 * x[0] + k2 as f64 * x[1]))
                })
                .sum()
        });
        let nf = lp_norm(&f, 2.0).unwrap();
        prop_assume!(nf > 1e-9);
        let bf = apply_symbol(&f, &symbol_beurling(grid).unwrap()).unwrap();
        prop_assert!((lp_norm(&bf, 2.0).unwrap() - nf).abs() <= 1e-12 * nf);
    }
}

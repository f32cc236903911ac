//! Paley's inequality for the Haar system, checked by exact integration.
//!
//! Haar functions are indexed in the usual way: h₀ ≡ 1 and, for
//! n = 2^j + k with 0 ≤ k < 2^j, h_n = 1 on the left half of
//! [k 2^{−j}, (k+1) 2^{−j}) and −1 on the right half. Any finite sum is a step
//! function on a dyadic partition, so its L^p norm is a finite sum.

use crate::constants::p_star;
use crate::error::{Error, Result};
use crate::rng::substream;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Number of cells of the finest dyadic partition carrying the first `n`
/// Haar functions.
fn resolution(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    // h_{n-1} lives at level floor(log2(n-1)); its halves need one more level.
    let level = usize::BITS - 1 - (n - 1).leading_zeros();
    1usize << (level + 1)
}

/// Values of Σ c_k h_k on the `cells` equal cells of [0, 1).
pub fn haar_step_values(coefficients: &[f64], cells: usize) -> Vec<f64> {
    let mut out = vec![0.0; cells];
    for (n, &c) in coefficients.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        if n == 0 {
            out.iter_mut().for_each(|v| *v += c);
            continue;
        }
        let j = usize::BITS - 1 - n.leading_zeros();
        let k = n - (1usize << j);
        let width = cells >> j;
        let start = k * width;
        let half = width / 2;
        for v in &mut out[start..start + half] {
            *v += c;
        }
        for v in &mut out[start + half..start + width] {
            *v -= c;
        }
    }
    out
}

fn step_norm(values: &[f64], p: f64) -> f64 {
    let n = values.len() as f64;
    (values.iter().map(|v| v.abs().powf(p)).sum::<f64>() / n).powf(1.0 / p)
}

/// Returns (‖Σ ε_k a_k h_k‖_p, (p*−1)‖Σ a_k h_k‖_p).
pub fn haar_paley_check(coefficients: &[f64], signs: &[f64], p: f64) -> Result<(f64, f64)> {
    if coefficients.len() != signs.len() {
        return Err(Error::Shape(format!(
            "{} coefficients but {} signs",
            coefficients.len(),
            signs.len()
        )));
    }
    if signs.iter().any(|&s| s != 1.0 && s != -1.0) {
        return Err(Error::Config("signs must be ±1".into()));
    }
    let ps = p_star(p)?;
    let cells = resolution(coefficients.len());
    let f = haar_step_values(coefficients, cells);
    let transformed: Vec<f64> = coefficients.iter().zip(signs).map(|(a, e)| a * e).collect();
    let g = haar_step_values(&transformed, cells);
    Ok((step_norm(&g, p), (ps - 1.0) * step_norm(&f, p)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaarFuzzReport {
    pub p: f64,
    pub cases: usize,
    pub max_terms: usize,
    /// Largest ‖Σ ε_k a_k h_k‖_p / ‖Σ a_k h_k‖_p seen.
    pub max_ratio: f64,
    pub bound: f64,
    pub violations: usize,
    pub pass: bool,
}

/// Random coefficients in [−1, 1] and random signs, 1..=max_terms terms.
pub fn haar_paley_fuzz(p: f64, cases: usize, max_terms: usize, seed: u64) -> Result<HaarFuzzReport> {
    let bound = p_star(p)? - 1.0;
    if max_terms == 0 {
        return Err(Error::Config("need at least one Haar term".into()));
    }
    let mut rng = substream(seed, 0);
    let (mut max_ratio, mut violations) = (0.0f64, 0);
    for _ in 0..cases {
        let n = rng.random_range(1..=max_terms);
        let a: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let e: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
        let (lhs, rhs) = haar_paley_check(&a, &e, p)?;
        if rhs > 0.0 {
            max_ratio = max_ratio.max(lhs * bound / rhs);
        }
        // at p = 2 both sides agree exactly, so allow rounding
        if lhs > rhs * (1.0 + 1e-12) {
            violations += 1;
        }
    }
    Ok(HaarFuzzReport { p, cases, max_terms, max_ratio, bound, violations, pass: violations == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_functions_are_orthogonal() {
        let cells = resolution(16);
        let basis: Vec<Vec<f64>> = (0..16)
            .map(|n| {
                let mut c = vec![0.0; 16];
                c[n] = 1.0;
                haar_step_values(&c, cells)
            })
            .collect();
        for i in 0..16 {
            for j in 0..16 {
                let ip: f64 = basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).sum::<f64>() / cells as f64;
                if i != j {
                    assert_eq!(ip, 0.0);
                } else {
                    // L^infinity normalised: |h_n|^2 integrates to the support length.
                    assert!(ip > 0.0);
                }
            }
        }
    }

    #[test]
    fn p_two_is_an_isometry() {
        let mut rng = substream(3, 0);
        for _ in 0..100 {
            let n = rng.random_range(1..40);
            let a: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let e: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
            let (lhs, rhs) = haar_paley_check(&a, &e, 2.0).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }
    }

    #[test]
    fn all_plus_signs_and_validation() {
        let a = [1.0, 0.5, -0.25, 2.0, 0.1];
        let (lhs, rhs) = haar_paley_check(&a, &[1.0; 5], 3.0).unwrap();
        assert!(lhs <= rhs);
        assert!((rhs / lhs - 2.0).abs() < 1e-12);
        assert!(haar_paley_check(&a, &[1.0; 4], 3.0).is_err());
        assert!(haar_paley_check(&a, &[1.0, 0.5, 1.0, 1.0, 1.0], 3.0).is_err());
        assert!(haar_paley_check(&a, &[1.0; 5], 1.0).is_err());
    }

    #[test]
    fn small_fuzz() {
        let mut rng = substream(11, 0);
        for p in [1.5, 3.0] {
            for _ in 0..500 {
                let n = rng.random_range(1..64);
                let a: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
                let e: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
                let (lhs, rhs) = haar_paley_check(&a, &e, p).unwrap();
                assert!(lhs <= rhs, "p={p} lhs={lhs} rhs={rhs}");
            }
        }
        let rep = haar_paley_fuzz(3.0, 300, 64, 5).unwrap();
        assert!(rep.pass && rep.max_ratio > 1.0 && rep.max_ratio <= 2.0);
        // p = 2 is an isometry; equality must not count as a violation
        assert!(haar_paley_fuzz(2.0, 300, 64, 6).unwrap().pass);
    }
}

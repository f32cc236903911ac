//! Martingale transforms on finite binary trees, with exact expectations by
//! enumeration of all 2^depth leaves.
//!
//! Internal nodes are numbered in heap order: the 2^k nodes at depth k have
//! indices 2^k − 1, …, 2^{k+1} − 2. From node n the martingale moves by
//! ±a_n with probability ½ each, so every difference d_{k+1} has mean zero
//! given the past.

use crate::constants::ExponentContext;
use crate::error::{Error, Result};
use crate::functions::{eval_u, eval_v, Matrix2, PlanePoint};
use crate::rng::substream;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const MAX_TREE_DEPTH: usize = 12;
pub const MAX_SEARCH_DEPTH: usize = 10;

/// Relative slack for comparisons that hold exactly in real arithmetic.
const EXACT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DyadicTree {
    pub depth: usize,
    pub d0: PlanePoint,
    /// a_n for every internal node in heap order; length 2^depth − 1.
    pub increments: Vec<PlanePoint>,
}

impl DyadicTree {
    pub fn new(d0: PlanePoint, increments: Vec<PlanePoint>) -> Result<Self> {
        let nodes = increments.len() + 1;
        if !nodes.is_power_of_two() {
            return Err(Error::Shape(format!("{} increments do not fill a complete tree", increments.len())));
        }
        let depth = nodes.trailing_zeros() as usize;
        if depth > MAX_TREE_DEPTH {
            return Err(Error::Config(format!("tree depth {depth} exceeds {MAX_TREE_DEPTH}")));
        }
        if !d0.is_finite() || increments.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite("tree increments".into()));
        }
        Ok(Self { depth, d0, increments })
    }

    pub fn node_count(&self) -> usize {
        self.increments.len()
    }

    /// A tree with planar increments drawn uniformly from [−1, 1]², or real
    /// ones when `planar` is false.
    pub fn random(depth: usize, planar: bool, rng: &mut impl Rng) -> Result<Self> {
        if depth > MAX_TREE_DEPTH {
            return Err(Error::Config(format!("tree depth {depth} exceeds {MAX_TREE_DEPTH}")));
        }
        let draw = |rng: &mut dyn rand::RngCore| {
            let re = rng.random_range(-1.0..1.0);
            let im = if planar { rng.random_range(-1.0..1.0) } else { 0.0 };
            PlanePoint::new(re, im)
        };
        let d0 = draw(rng);
        let increments = (0..(1usize << depth) - 1).map(|_| draw(rng)).collect();
        Self::new(d0, increments)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    /// v = ±1.
    Signs,
    /// v ∈ [−1, 1].
    Interval,
    /// v ∈ [0, 1].
    Choi,
    /// 2×2 matrices of operator norm at most 1.
    Matrix,
}

/// Predictable multipliers. `values[0]` multiplies d₀ and `values[1 + n]`
/// multiplies the step taken out of internal node n, so the value used at
/// step k can only depend on the node at depth k − 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformSpec {
    pub kind: TransformKind,
    pub values: Vec<Matrix2>,
}

fn operator_norm(m: Matrix2) -> f64 {
    let f2 = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
    let det = m.det();
    ((f2 + (f2 * f2 - 4.0 * det * det).max(0.0).sqrt()) / 2.0).sqrt()
}

fn scalar_of(m: Matrix2) -> Option<f64> {
    (m.b == 0.0 && m.c == 0.0 && m.a == m.d).then_some(m.a)
}

impl TransformSpec {
    pub fn scalar(kind: TransformKind, values: &[f64]) -> Result<Self> {
        let spec = Self { kind, values: values.iter().map(|&v| Matrix2::IDENTITY * v).collect() };
        spec.check_values()?;
        Ok(spec)
    }

    pub fn matrices(values: Vec<Matrix2>) -> Result<Self> {
        let spec = Self { kind: TransformKind::Matrix, values };
        spec.check_values()?;
        Ok(spec)
    }

    /// v ≡ 1 for a tree of the given depth.
    pub fn identity(depth: usize) -> Self {
        Self { kind: TransformKind::Signs, values: vec![Matrix2::IDENTITY; 1usize << depth] }
    }

    pub fn random(kind: TransformKind, depth: usize, rng: &mut impl Rng) -> Self {
        let n = 1usize << depth;
        let values = (0..n)
            .map(|_| match kind {
                TransformKind::Signs => Matrix2::IDENTITY * if rng.random_bool(0.5) { 1.0 } else { -1.0 },
                TransformKind::Interval => Matrix2::IDENTITY * rng.random_range(-1.0..=1.0),
                TransformKind::Choi => Matrix2::IDENTITY * rng.random_range(0.0..=1.0),
                TransformKind::Matrix => {
                    let m = Matrix2::new(
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                    );
                    let s = operator_norm(m);
                    if s > 1.0 {
                        m * (1.0 / s)
                    } else {
                        m
                    }
                }
            })
            .collect();
        Self { kind, values }
    }

    fn check_values(&self) -> Result<()> {
        for (i, &m) in self.values.iter().enumerate() {
            if !m.is_finite() {
                return Err(Error::NonFinite(format!("transform value {i}")));
            }
            let ok = match self.kind {
                TransformKind::Signs => matches!(scalar_of(m), Some(v) if v == 1.0 || v == -1.0),
                TransformKind::Interval => matches!(scalar_of(m), Some(v) if v.abs() <= 1.0),
                TransformKind::Choi => matches!(scalar_of(m), Some(v) if (0.0..=1.0).contains(&v)),
                TransformKind::Matrix => operator_norm(m) <= 1.0 + EXACT_SLACK,
            };
            if !ok {
                return Err(Error::Config(format!("transform value {i} is outside the {:?} range", self.kind)));
            }
        }
        Ok(())
    }

    /// Checks the values against the kind and the tree shape.
    pub fn validate(&self, tree: &DyadicTree) -> Result<()> {
        if self.values.len() != tree.node_count() + 1 {
            return Err(Error::Shape(format!(
                "{} transform values for a tree with {} internal nodes",
                self.values.len(),
                tree.node_count()
            )));
        }
        self.check_values()
    }

    /// The ceiling for the L^p ratio: p* − 1, or the upper Choi bracket p*/2
    /// for [0, 1]-valued transforms.
    pub fn ceiling(&self, ctx: &ExponentContext) -> f64 {
        match self.kind {
            TransformKind::Choi => ctx.p_star / 2.0,
            _ => ctx.p_star - 1.0,
        }
    }
}

fn apply(m: Matrix2, v: PlanePoint) -> PlanePoint {
    PlanePoint::new(m.a * v.re + m.b * v.im, m.c * v.re + m.d * v.im)
}

/// Neumaier-compensated mean.
fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp, mut n) = (0.0f64, 0.0f64, 0usize);
    for v in values {
        let t = sum + v;
        comp += if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
        sum = t;
        n += 1;
    }
    (sum + comp) / n as f64
}

/// All (f_k, g_k) levels; level k has 2^k equally likely states.
fn levels(tree: &DyadicTree, spec: &TransformSpec) -> Result<Vec<Vec<(PlanePoint, PlanePoint)>>> {
    spec.validate(tree)?;
    let mut out = Vec::with_capacity(tree.depth + 1);
    out.push(vec![(tree.d0, apply(spec.values[0], tree.d0))]);
    for k in 0..tree.depth {
        let prev = &out[k];
        let offset = (1usize << k) - 1;
        let mut next = Vec::with_capacity(prev.len() * 2);
        for (i, &(f, g)) in prev.iter().enumerate() {
            let a = tree.increments[offset + i];
            let e = apply(spec.values[1 + offset + i], a);
            next.push((f + a, g + e));
            next.push((f - a, g - e));
        }
        out.push(next);
    }
    Ok(out)
}

/// (E|g_n|^p / E|f_n|^p)^{1/p} over the leaves.
pub fn exhaustive_transform_ratio(tree: &DyadicTree, spec: &TransformSpec, p: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Domain(format!("exponent p = {p} must exceed 1")));
    }
    let levels = levels(tree, spec)?;
    let leaves = &levels[tree.depth];
    let ef = mean(leaves.iter().map(|(f, _)| f.norm().powf(p)));
    let eg = mean(leaves.iter().map(|(_, g)| g.norm().powf(p)));
    if ef == 0.0 {
        return Err(Error::Degenerate("E|f_n|^p vanishes".into()));
    }
    Ok((eg / ef).powf(1.0 / p))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupermartingaleReport {
    pub p: f64,
    pub depth: usize,
    /// EU(f_k, g_k) for k = 0, …, depth.
    pub eu: Vec<f64>,
    pub ev_final: f64,
    /// Largest increase EU_{k+1} − EU_k seen (≤ 0 up to rounding).
    pub max_increase: f64,
    pub monotone: bool,
    pub initial_nonpositive: bool,
    pub terminal_ordered: bool,
    pub pass: bool,
}

pub fn supermartingale_check(
    tree: &DyadicTree,
    spec: &TransformSpec,
    ctx: &ExponentContext,
) -> Result<SupermartingaleReport> {
    let levels = levels(tree, spec)?;
    let eu: Vec<f64> = levels.iter().map(|lv| mean(lv.iter().map(|&(f, g)| eval_u(f, g, ctx)))).collect();
    let leaves = &levels[tree.depth];
    let ev_final = mean(leaves.iter().map(|&(f, g)| eval_v(f, g, ctx)));
    let slack = |x: f64| EXACT_SLACK * (1.0 + x.abs());
    let mut max_increase = f64::NEG_INFINITY;
    let mut monotone = true;
    for w in eu.windows(2) {
        let inc = w[1] - w[0];
        max_increase = max_increase.max(inc);
        if inc > slack(w[0]) {
            monotone = false;
        }
    }
    if eu.len() == 1 {
        max_increase = 0.0;
    }
    let (f0, g0) = levels[0][0];
    let initial_nonpositive = g0.norm() > f0.norm() || eu[0] <= slack(eu[0]);
    let eu_n = eu[tree.depth];
    let terminal_ordered = ev_final <= eu_n + slack(eu_n) && eu_n <= slack(eu_n);
    Ok(SupermartingaleReport {
        p: ctx.p,
        depth: tree.depth,
        eu,
        ev_final,
        max_increase,
        monotone,
        initial_nonpositive,
        terminal_ordered,
        pass: monotone && initial_nonpositive && terminal_ordered,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformFuzzReport {
    pub p: f64,
    pub cases: usize,
    pub max_depth: usize,
    pub ceiling: f64,
    pub max_ratio: f64,
    pub ratio_violations: usize,
    pub supermartingale_violations: usize,
    pub pass: bool,
}

/// Random trees of depth 1..=max_depth with random transforms of the given
/// kinds (cycled); every case is checked for the ratio ceiling and the
/// supermartingale property of U.
pub fn transform_fuzz(
    p: f64,
    cases: usize,
    max_depth: usize,
    kinds: &[TransformKind],
    seed: u64,
    blocks: usize,
) -> Result<TransformFuzzReport> {
    let ctx = ExponentContext::new(p)?;
    if max_depth == 0 || max_depth > MAX_TREE_DEPTH || kinds.is_empty() || blocks == 0 {
        return Err(Error::Config("fuzz needs 1 ≤ depth ≤ 12, at least one kind and one block".into()));
    }
    type Partial = (f64, usize, usize, f64);
    let partials: Vec<Result<Partial>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = substream(seed, b as u64);
            let mut acc: Partial = (0.0, 0, 0, 0.0);
            for j in (b..cases).step_by(blocks) {
                let kind = kinds[j % kinds.len()];
                let depth = rng.random_range(1..=max_depth);
                let tree = DyadicTree::random(depth, rng.random_bool(0.5), &mut rng)?;
                let spec = TransformSpec::random(kind, depth, &mut rng);
                let ceiling = spec.ceiling(&ctx);
                let ratio = match exhaustive_transform_ratio(&tree, &spec, p) {
                    Ok(r) => r,
                    Err(Error::Degenerate(_)) => continue,
                    Err(e) => return Err(e),
                };
                acc.0 = acc.0.max(ratio);
                acc.3 = acc.3.max(ceiling);
                if ratio > ceiling * (1.0 + EXACT_SLACK) {
                    acc.1 += 1;
                }
                if !supermartingale_check(&tree, &spec, &ctx)?.pass {
                    acc.2 += 1;
                }
            }
            Ok(acc)
        })
        .collect();
    let mut max_ratio = 0.0f64;
    let (mut rv, mut sv, mut ceiling) = (0, 0, 0.0f64);
    for part in partials {
        let (m, r, s, c) = part?;
        max_ratio = max_ratio.max(m);
        rv += r;
        sv += s;
        ceiling = ceiling.max(c);
    }
    Ok(TransformFuzzReport {
        p,
        cases,
        max_depth,
        ceiling,
        max_ratio,
        ratio_violations: rv,
        supermartingale_violations: sv,
        pass: rv == 0 && sv == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NearExtremalReport {
    pub p: f64,
    pub depth: usize,
    pub iterations: usize,
    pub seed: u64,
    pub ceiling: f64,
    /// Best ratio after each iteration, starting with the initial state.
    pub trajectory: Vec<f64>,
    pub best_ratio: f64,
    pub best_tree: DyadicTree,
    pub best_transform: TransformSpec,
    pub pass: bool,
}

/// Accept-if-improved local search over real increments and ±1 transforms.
pub fn near_extremal_search(p: f64, depth: usize, iterations: usize, seed: u64) -> Result<NearExtremalReport> {
    let ctx = ExponentContext::new(p)?;
    if depth == 0 || depth > MAX_SEARCH_DEPTH {
        return Err(Error::Config(format!("search depth must be in 1..={MAX_SEARCH_DEPTH}")));
    }
    let mut rng = substream(seed, 0);
    let nodes = (1usize << depth) - 1;
    let increments = (0..nodes).map(|_| PlanePoint::new(rng.random_range(0.5..1.5), 0.0)).collect();
    let mut tree = DyadicTree::new(PlanePoint::new(1.0, 0.0), increments)?;
    let mut signs = vec![1.0; nodes + 1];
    for s in signs.iter_mut().skip(1) {
        if rng.random_bool(0.5) {
            *s = -1.0;
        }
    }
    let mut spec = TransformSpec::scalar(TransformKind::Signs, &signs)?;
    let mut best = exhaustive_transform_ratio(&tree, &spec, p)?;
    let mut trajectory = Vec::with_capacity(iterations + 1);
    trajectory.push(best);
    for _ in 0..iterations {
        let node = rng.random_range(0..nodes);
        let mut cand_tree = tree.clone();
        let mut cand_spec = spec.clone();
        if rng.random_bool(0.5) {
            let a = &mut cand_tree.increments[node];
            *a = *a * rng.random_range(-1.0f64..1.0).exp();
        } else {
            let v = &mut cand_spec.values[1 + node];
            *v = *v * -1.0;
        }
        let r = exhaustive_transform_ratio(&cand_tree, &cand_spec, p)?;
        if r > best * (1.0 + EXACT_SLACK) {
            best = r;
            tree = cand_tree;
            spec = cand_spec;
        }
        trajectory.push(best);
    }
    let ceiling = ctx.p_star - 1.0;
    let pass = trajectory.windows(2).all(|w| w[1] >= w[0])
        && trajectory.iter().all(|&r| r <= ceiling * (1.0 + EXACT_SLACK));
    Ok(NearExtremalReport {
        p,
        depth,
        iterations,
        seed,
        ceiling,
        trajectory,
        best_ratio: best,
        best_tree: tree,
        best_transform: spec,
        pass,
    })
}

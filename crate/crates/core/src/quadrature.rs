//! Equal-weight rules on reflection-closed node sets.
//!
//! Seeds are angles in the fundamental interval `(0, π/2^n]`. Unfolding
//! reflects them through `S_{n-1}, …, S_0`; in the angle variable each step is
//! exact, so the node set is closed under every fold map up to the rounding of
//! `cos`.

use crate::dyadic::{dyadic_angle, DyadicLevel, ENDPOINT_TOL};
use crate::error::{Error, Result};
use crate::oracle::{MomentOracle, WeightedOracle};
use crate::sum::{compensated_sum, Neumaier};
use crate::weights::WeightSpec;

/// Nodes closer than this (in `x`) are one node.
pub const DEDUP_TOL: f64 = 1e-12;

/// Default relative tolerance of the exactness sweep.
pub const DEFAULT_EXACTNESS_TOL: f64 = 1e-9;

/// Distance assigned to a point whose counterpart set is empty; the
/// diameter of `[-1, 1]`.
pub const EMPTY_SET_DISTANCE: f64 = 2.0;

/// Default exactness sweep limit `2m + 8`.
pub fn default_max_degree(m: usize) -> usize {
    2 * m + 8
}

/// A strictly increasing node set in `(-1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    level_n: usize,
    nodes: Vec<f64>,
    seed_angles: Vec<f64>,
}

impl NodeSet {
    /// Wraps explicit nodes; checks order and range but not closure
    /// (see [`validate_closure`]).
    pub fn from_nodes(level_n: usize, nodes: Vec<f64>) -> Result<Self> {
        DyadicLevel::new(level_n)?;
        if nodes.is_empty() {
            return Err(Error::Nodes("node set is empty".into()));
        }
        if let Some(t) = nodes.iter().find(|t| !(**t > -1.0 && **t < 1.0)) {
            return Err(Error::Nodes(format!("node {t} is outside (-1, 1)")));
        }
        if let Some(w) = nodes.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(Error::Nodes(format!(
                "nodes must be strictly increasing: {} then {}",
                w[0], w[1]
            )));
        }
        Ok(Self {
            level_n,
            nodes,
            seed_angles: Vec::new(),
        })
    }

    pub fn level_n(&self) -> usize {
        self.level_n
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn seed_angles(&self) -> &[f64] {
        &self.seed_angles
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Reflection closure of the seed angles.
///
/// Starting from `{cos θ}` inside `[x_n, 1]`, each step `k = n-1, …, 0` adds
/// `S_k` of the current set. An interior seed yields `2^n` nodes; the seed
/// `π/2^n` (the node `x_n`, fixed by `S_{n-1}`) yields `2^{n-1}`.
pub fn unfold_seed(level: &DyadicLevel, seed_angles: &[f64]) -> Result<NodeSet> {
    let n = level.n();
    let h = dyadic_angle(n);
    let x_n = level.breakpoint(n)?;
    if seed_angles.is_empty() {
        return Err(Error::Domain("at least one seed angle is required".into()));
    }
    let mut seeds = Vec::with_capacity(seed_angles.len());
    for &theta in seed_angles {
        if !theta.is_finite() {
            return Err(Error::Domain(format!("seed angle {theta} is not finite")));
        }
        // a seed within rounding of x_n is the fold fixed point
        let theta = if (theta.cos() - x_n).abs() <= DEDUP_TOL {
            h
        } else {
            theta
        };
        if !(theta > 0.0 && theta <= h) {
            return Err(Error::Domain(format!(
                "seed angle {theta} is outside (0, pi/2^{n}] = (0, {h}]"
            )));
        }
        if 1.0 - theta.cos() <= DEDUP_TOL {
            return Err(Error::Domain(format!("seed angle {theta} puts a node on x = 1")));
        }
        seeds.push(theta);
    }
    let mut by_x: Vec<f64> = seeds.iter().map(|t| t.cos()).collect();
    by_x.sort_by(f64::total_cmp);
    if let Some(w) = by_x.windows(2).find(|w| w[1] - w[0] <= DEDUP_TOL) {
        return Err(Error::Domain(format!(
            "seeds at x = {} and x = {} coincide within {DEDUP_TOL:e}",
            w[0], w[1]
        )));
    }

    let mut angles = seeds.clone();
    for k in (0..n).rev() {
        let shift = dyadic_angle(k);
        let fixed = dyadic_angle(k + 1);
        let len = angles.len();
        for i in 0..len {
            let phi = angles[i];
            if phi != fixed {
                angles.push(shift - phi);
            }
        }
    }
    let mut nodes: Vec<f64> = angles.iter().map(|a| a.cos()).collect();
    nodes.sort_by(f64::total_cmp);
    nodes.dedup_by(|b, a| (*b - *a).abs() <= DEDUP_TOL);
    let mut set = NodeSet::from_nodes(n, nodes)?;
    set.seed_angles = seeds;
    Ok(set)
}

/// Largest mismatch between `S_k(X ∩ [x_{k+1}, 1])` and `X ∩ [x_k, x_{k+1}]`
/// over all `k < n`, measured as a two-sided nearest-point distance.
///
/// A point whose counterpart set is empty counts as [`EMPTY_SET_DISTANCE`].
pub fn validate_closure(ns: &NodeSet, level: &DyadicLevel) -> f64 {
    let nodes = ns.nodes();
    let mut worst = 0.0f64;
    for k in 0..level.n() {
        let lo = level.breakpoints()[k];
        let mid = level.breakpoints()[k + 1];
        let mut images: Vec<f64> = nodes
            .iter()
            .filter(|&&t| t >= mid - ENDPOINT_TOL)
            .filter_map(|&t| level.fold_map_eval(k, t).ok())
            .collect();
        images.sort_by(f64::total_cmp);
        let targets: Vec<f64> = nodes
            .iter()
            .copied()
            .filter(|&t| t >= lo - ENDPOINT_TOL && t <= mid + ENDPOINT_TOL)
            .collect();
        for &s in &images {
            worst = worst.max(nearest_distance(&targets, s));
        }
        for &t in &targets {
            worst = worst.max(nearest_distance(&images, t));
        }
    }
    worst
}

fn nearest_distance(sorted: &[f64], x: f64) -> f64 {
    if sorted.is_empty() {
        return EMPTY_SET_DISTANCE;
    }
    let i = sorted.partition_point(|&v| v < x);
    let mut best = f64::INFINITY;
    if i < sorted.len() {
        best = best.min((sorted[i] - x).abs());
    }
    if i > 0 {
        best = best.min((x - sorted[i - 1]).abs());
    }
    best
}

/// An equal-weight rule `(1/m) Σ f(t_j)` for a weight in `W_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    node_set: NodeSet,
    weight: WeightSpec,
}

impl QuadratureRule {
    pub fn new(node_set: NodeSet, weight: WeightSpec) -> Result<Self> {
        if node_set.level_n() != weight.n() {
            return Err(Error::Domain(format!(
                "node set is for W_{} but weight is in W_{}",
                node_set.level_n(),
                weight.n()
            )));
        }
        Ok(Self { node_set, weight })
    }

    pub fn node_set(&self) -> &NodeSet {
        &self.node_set
    }

    pub fn nodes(&self) -> &[f64] {
        self.node_set.nodes()
    }

    pub fn weight(&self) -> &WeightSpec {
        &self.weight
    }

    pub fn m(&self) -> usize {
        self.node_set.len()
    }

    pub fn node_weight(&self) -> f64 {
        1.0 / self.m() as f64
    }

    /// `(1/m) Σ f(t_j)` with compensated summation.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        equal_weight_sum(self.nodes(), f)
    }
}

fn equal_weight_sum<F: Fn(f64) -> f64>(nodes: &[f64], f: F) -> f64 {
    let mut acc = Neumaier::default();
    for &t in nodes {
        acc.add(f(t));
    }
    acc.total() / nodes.len() as f64
}

/// The rule on the closure of the single seed `π/2^n`: `m = 2^{n-1}` nodes,
/// exact up to degree `2m - 1`.
pub fn minimal_rule(level: &DyadicLevel, weight: &WeightSpec) -> Result<QuadratureRule> {
    let ns = unfold_seed(level, &[dyadic_angle(level.n())])?;
    QuadratureRule::new(ns, weight.clone())
}

/// `(1/m) Σ f(t_j)`.
pub fn apply_rule<F: Fn(f64) -> f64>(rule: &QuadratureRule, f: F) -> f64 {
    rule.apply(f)
}

/// Largest `d <= d_max` such that the rule reproduces the oracle moments of
/// `T_0, …, T_d` within `tol · (1 + |moment|)`; `None` if even `T_0` fails.
pub fn degree_of_exactness(
    rule: &QuadratureRule,
    oracle: &dyn MomentOracle,
    tol: f64,
    d_max: usize,
) -> Result<Option<usize>> {
    exactness_degree(rule.nodes(), oracle, tol, d_max)
}

/// [`degree_of_exactness`] on bare nodes with equal weights.
pub fn exactness_degree(
    nodes: &[f64],
    oracle: &dyn MomentOracle,
    tol: f64,
    d_max: usize,
) -> Result<Option<usize>> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if d_max < 1 {
        return Err(Error::Domain("d_max must be at least 1".into()));
    }
    // T_{j-1} and T_j at every node, advanced together
    let mut prev: Vec<f64> = vec![1.0; nodes.len()];
    let mut cur: Vec<f64> = nodes.to_vec();
    for j in 0..=d_max {
        let moment = oracle.chebyshev_moment(j)?.value;
        let values: &[f64] = if j == 0 { &prev } else { &cur };
        let approx = compensated_sum(values.iter().copied()) / nodes.len() as f64;
        if (approx - moment).abs() > tol * (1.0 + moment.abs()) {
            return Ok(j.checked_sub(1));
        }
        if j >= 1 {
            for (p, (c, &x)) in prev.iter_mut().zip(cur.iter_mut().zip(nodes)) {
                let next = 2.0 * x * *c - *p;
                *p = *c;
                *c = next;
            }
        }
    }
    Ok(Some(d_max))
}

/// Evaluates `Q(x) = Π (x - t_j)²`, of degree `2m`, by the oracle (positive)
/// and by the rule (zero). Returns `(oracle value, rule value)`.
pub fn gauss_bound_witness(rule: &QuadratureRule, oracle: &WeightedOracle<'_>) -> Result<(f64, f64)> {
    let nodes = rule.nodes();
    let q = |x: f64| nodes.iter().map(|t| (x - t) * (x - t)).product::<f64>();
    let integral = oracle.integrate(q)?.value;
    Ok((integral, rule.apply(q)))
}

/// Mehler's nodes `cos((2k-1)π/(2m))`, `k = 1..m`, ascending.
///
/// Evaluated as `sin((2k-1-m)π/(2m))`, which is exactly odd about the centre
/// and gives an exact zero node for odd `m`.
pub fn mehler_nodes(m: usize) -> Vec<f64> {
    (1..=m)
        .map(|k| ((2 * k as i64 - 1 - m as i64) as f64 * std::f64::consts::PI / (2 * m) as f64).sin())
        .collect()
}

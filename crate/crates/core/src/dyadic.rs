//! Breakpoints, the polynomial family `P_n`, the fold maps `S_k` and the
//! averaging operators `R_k`.
//!
//! Everything here has two faces. In the `x` variable the breakpoints are
//! `x_0 = -1`, `x_{k+1} = sqrt((1 + x_k) / 2)` and `S_k` is defined implicitly
//! by `P_{2^k}(y) = -P_{2^k}(S_k(y))`. In the angle variable `θ = arccos x` the
//! breakpoints are `π / 2^k` and `S_k` is the reflection `θ ↦ π/2^k - θ`.
//! The angle form is what we evaluate; the `x` form is kept as a cross-check.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Slack accepted when a point produced by an upstream fold lands on a
/// breakpoint with rounding error.
pub const ENDPOINT_TOL: f64 = 1e-12;

/// Deepest supported class index. Breakpoints beyond this are within a few
/// ulps of 1 and the fold orbits (2^n points) stop being practical.
pub const MAX_LEVEL: usize = 24;

/// The angle `π / 2^k` of breakpoint `x_k`.
#[inline]
pub fn dyadic_angle(k: usize) -> f64 {
    PI / (1u64 << k) as f64
}

/// A class index `n` together with the breakpoints `x_0..x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicLevel {
    n: usize,
    breakpoints: Vec<f64>,
}

impl DyadicLevel {
    /// Builds the breakpoint table by the half-angle recurrence and checks it
    /// against `cos(π / 2^k)`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_LEVEL {
            return Err(Error::Domain(format!(
                "class index must be in 1..={MAX_LEVEL}, got {n}"
            )));
        }
        let mut breakpoints = Vec::with_capacity(n + 1);
        let mut x = -1.0f64;
        breakpoints.push(x);
        for _ in 0..n {
            x = ((1.0 + x) / 2.0).sqrt();
            breakpoints.push(x);
        }
        for (k, &x) in breakpoints.iter().enumerate() {
            let closed = dyadic_angle(k).cos();
            if (x - closed).abs() > 1e-14 {
                return Err(Error::Domain(format!(
                    "breakpoint x_{k} = {x:e} disagrees with cos(pi/2^{k}) = {closed:e}"
                )));
            }
        }
        Ok(Self { n, breakpoints })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// `x_k` for `0 <= k <= n`.
    pub fn breakpoint(&self, k: usize) -> Result<f64> {
        self.breakpoints.get(k).copied().ok_or(Error::Range {
            index: k,
            max: self.n,
        })
    }

    /// Number of points `m = 2^{n-1}` in the minimal node set.
    pub fn minimal_size(&self) -> usize {
        1usize << (self.n - 1)
    }

    /// The highest degree `2^n - 1` reached by rules for this class.
    pub fn guaranteed_degree(&self) -> usize {
        (1usize << self.n) - 1
    }

    pub fn fold_map(&self, k: usize) -> Result<FoldMap> {
        if k >= self.n {
            return Err(Error::Range {
                index: k,
                max: self.n - 1,
            });
        }
        Ok(FoldMap {
            k,
            domain: (self.breakpoints[k + 1], 1.0),
            range: (self.breakpoints[k], self.breakpoints[k + 1]),
        })
    }

    /// `S_k(y)`.
    pub fn fold_map_eval(&self, k: usize, y: f64) -> Result<f64> {
        self.fold_map(k)?.eval(y)
    }

    /// `dS_k/dy` at `y`.
    pub fn fold_map_derivative(&self, k: usize, y: f64) -> Result<f64> {
        self.fold_map(k)?.derivative(y)
    }

    /// `R_k(f)(y) = (f(S_k(y)) + f(y)) / 2`.
    pub fn fold_average<F>(&self, k: usize, f: F, y: f64) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        let s = self.fold_map_eval(k, y)?;
        Ok(0.5 * (f(s) + f(y)))
    }

    /// `(R_{n-1} ∘ … ∘ R_0)(f)(y)` for `x_n <= y <= 1`.
    pub fn fold_compose<F>(&self, f: F, y: f64) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        let lo = self.breakpoints[self.n];
        if !(y >= lo - ENDPOINT_TOL && y <= 1.0 + ENDPOINT_TOL) {
            return Err(Error::Domain(format!(
                "fold_compose needs y in [x_{n}, 1] = [{lo}, 1], got {y}",
                n = self.n
            )));
        }
        let theta = y.clamp(-1.0, 1.0).acos().min(dyadic_angle(self.n));
        Ok(self.fold_compose_angle(f, theta))
    }

    /// Angle form of [`fold_compose`](Self::fold_compose); `theta` must lie in
    /// `[0, π/2^n]`.
    ///
    /// The composition expands into the mean of `f` over the `2^n` orbit
    /// points of `θ`. The outermost operator `R_{n-1}` contributes the first
    /// reflection, so the orbit is grown from `k = n-1` down to `0`; the last
    /// operator to act on `f`, `R_0`, pairs each point with its negative.
    pub fn fold_compose_angle<F>(&self, f: F, theta: f64) -> f64
    where
        F: Fn(f64) -> f64,
    {
        let orbit = self.orbit_angles(theta);
        let mut acc = crate::sum::Neumaier::default();
        for phi in &orbit {
            acc.add(f(phi.cos()));
        }
        acc.total() / orbit.len() as f64
    }

    /// All `2^n` images of `theta` under the reflection group, counted with
    /// multiplicity.
    pub fn orbit_angles(&self, theta: f64) -> Vec<f64> {
        let mut orbit = Vec::with_capacity(1 << self.n);
        orbit.push(theta);
        for k in (0..self.n).rev() {
            let shift = dyadic_angle(k);
            let len = orbit.len();
            for i in 0..len {
                let phi = orbit[i];
                orbit.push(shift - phi);
            }
        }
        orbit
    }

    /// Maximum involution and defining-relation residuals of the angle-form
    /// `S_k` over `samples` evenly spaced points of each domain.
    ///
    /// Returns `(max |S_k(S_k(y)) - y|, max |P_{2^k}(y) + P_{2^k}(S_k(y))|)`,
    /// the second taken over `k >= 1` only.
    pub fn angle_form_residuals(&self, samples: usize) -> (f64, f64) {
        let mut involution = 0.0f64;
        let mut relation = 0.0f64;
        for k in 0..self.n {
            let map = self.fold_map(k).expect("k < n");
            let (a, b) = map.domain;
            let degree = 1u32 << k;
            for i in 0..samples {
                let y = a + (b - a) * i as f64 / (samples - 1).max(1) as f64;
                let s = map.eval(y).expect("grid inside domain");
                let back = map.inverse(s).expect("image inside range");
                involution = involution.max((back - y).abs());
                if k >= 1 {
                    relation = relation.max((poly_eval(degree, y) + poly_eval(degree, s)).abs());
                }
            }
        }
        (involution, relation)
    }
}

/// Folds an angle in `[0, π]` into the fundamental angle interval
/// `[0, π/2^n]`.
///
/// For `k = 0, 1, …, n-1`, whenever `θ > π/2^{k+1}` it is replaced by
/// `π/2^k - θ`.
pub fn fold_angle(n: usize, theta: f64) -> f64 {
    let mut t = theta;
    for k in 0..n {
        if t > dyadic_angle(k + 1) {
            t = dyadic_angle(k) - t;
        }
    }
    t.max(0.0)
}

/// The fold map `S_k : [x_{k+1}, 1] → [x_k, x_{k+1}]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldMap {
    pub k: usize,
    pub domain: (f64, f64),
    pub range: (f64, f64),
}

impl FoldMap {
    fn check_domain(&self, y: f64) -> Result<()> {
        let (a, b) = self.domain;
        if y >= a - ENDPOINT_TOL && y <= b + ENDPOINT_TOL {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "S_{} is defined on [{a}, {b}], got y = {y}",
                self.k
            )))
        }
    }

    /// `S_k(y) = cos(π/2^k - arccos y)`.
    pub fn eval(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        if self.k == 0 {
            return Ok(-y);
        }
        let theta = y.clamp(-1.0, 1.0).acos();
        Ok((dyadic_angle(self.k) - theta).cos())
    }

    /// `S_k^{-1}(s)` for `s` in the range `[x_k, x_{k+1}]`; the same formula,
    /// since `S_k` is an involution.
    pub fn inverse(&self, s: f64) -> Result<f64> {
        let (a, b) = self.range;
        if !(s >= a - ENDPOINT_TOL && s <= b + ENDPOINT_TOL) {
            return Err(Error::Domain(format!(
                "S_{} maps onto [{a}, {b}], got s = {s}",
                self.k
            )));
        }
        if self.k == 0 {
            return Ok(-s);
        }
        let phi = s.clamp(-1.0, 1.0).acos();
        Ok((dyadic_angle(self.k) - phi).cos())
    }

    /// `S_k(y)` by inverting `P_{2^k}`: start from `-P_{2^k}(y)` and take
    /// `k` positive half-angle square roots.
    ///
    /// Loses about half the digits near `y = 1` where the inverse has an
    /// infinite slope; kept only to cross-check [`eval`](Self::eval).
    pub fn eval_algebraic(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        if self.k == 0 {
            return Ok(-y);
        }
        let mut z = -poly_eval(1 << self.k, y.min(1.0));
        for _ in 0..self.k {
            z = ((1.0 + z).max(0.0) / 2.0).sqrt();
        }
        Ok(z)
    }

    /// `dS_k/dy = -sqrt(1 - S_k(y)^2) / sqrt(1 - y^2)` (and `-1` for `k = 0`).
    pub fn derivative(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        if self.k == 0 {
            return Ok(-1.0);
        }
        let sin_theta = ((1.0 - y) * (1.0 + y)).max(0.0).sqrt();
        if sin_theta == 0.0 {
            return Err(Error::Singularity { k: self.k, y });
        }
        let theta = y.clamp(-1.0, 1.0).acos();
        Ok(-(dyadic_angle(self.k) - theta).sin() / sin_theta)
    }
}

/// Factorisation `n = 2^p · q` with `q` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyIndex {
    pub n: u64,
    /// 2-adic valuation, written `|P_n|`; zero for `n = 0`.
    pub p: u32,
    /// Odd cofactor; zero for `n = 0`.
    pub q: u64,
}

impl PolyIndex {
    pub fn new(n: u64) -> Self {
        if n == 0 {
            return Self { n, p: 0, q: 0 };
        }
        let p = n.trailing_zeros();
        Self { n, p, q: n >> p }
    }
}

/// `|P_n|`, the exponent of 2 in `n`.
pub fn valuation(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain(
            "valuation is undefined for n = 0 (no factorisation 2^p q)".into(),
        ));
    }
    Ok(n.trailing_zeros())
}

/// `max_{1<=k<=n} |P_k| = floor(log2 n)`.
pub fn max_valuation(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("max_valuation needs n >= 1".into()));
    }
    Ok(n.ilog2())
}

/// `P_n(x)` evaluated through its compositional definition: `p` steps of
/// `y ↦ 2y² - 1`, then the odd power `q`.
pub fn poly_eval(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let p = n.trailing_zeros();
    let q = n >> p;
    let mut y = x;
    for _ in 0..p {
        y = 2.0 * y * y - 1.0;
    }
    if q == 1 {
        y
    } else {
        y.powi(q as i32)
    }
}

/// `P_n(cos θ)` in the angle variable: `P_{2^p q}(cos θ) = cos(2^p θ)^q`.
///
/// At a breakpoint given by its angle `π/2^k` this avoids the rounding of
/// `x_k` itself, which `P_{2^p}` amplifies by its slope of order `4^p`.
pub fn poly_eval_angle(n: u32, theta: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let p = n.trailing_zeros();
    let q = n >> p;
    let c = (theta * (1u64 << p) as f64).cos();
    if q == 1 {
        c
    } else {
        c.powi(q as i32)
    }
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn level(n: usize) -> DyadicLevel {
        DyadicLevel::new(n).unwrap()
    }

    #[test]
    fn breakpoint_values() {
        let l = level(3);
        assert_eq!(l.breakpoint(0).unwrap(), -1.0);
        assert_eq!(l.breakpoint(1).unwrap(), 0.0);
        // two steps of the recurrence, equal to cos(pi/4)
        assert_abs_diff_eq!(l.breakpoint(2).unwrap(), 0.7071067811865476, epsilon = 1e-16);
        assert!(matches!(l.breakpoint(4), Err(Error::Range { index: 4, max: 3 })));
    }

    #[test]
    fn breakpoints_increase_and_match_cosine() {
        let l = level(MAX_LEVEL);
        for (k, w) in l.breakpoints().windows(2).enumerate() {
            assert!(w[1] > w[0], "x_{} !< x_{}", k, k + 1);
        }
        for (k, &x) in l.breakpoints().iter().enumerate() {
            assert!((x - dyadic_angle(k).cos()).abs() <= 1e-14);
        }
    }

    #[test]
    fn rejects_bad_level() {
        assert!(DyadicLevel::new(0).is_err());
        assert!(DyadicLevel::new(MAX_LEVEL + 1).is_err());
    }

    #[test]
    fn poly_examples() {
        assert_eq!(poly_eval(4, 0.0), 1.0);
        assert_eq!(poly_eval(3, 2.0), 8.0);
        assert_eq!(poly_eval(0, 123.0), 1.0);
        assert_eq!(poly_eval(1, -0.25), -0.25);
        // P_6 = (2x^2 - 1)^3
        let x = 0.37;
        assert_abs_diff_eq!(poly_eval(6, x), (2.0 * x * x - 1.0f64).powi(3), epsilon = 1e-15);
        // P_8 = 2(2(2x^2-1)^2-1)^2-1
        let p4 = 2.0 * (2.0 * x * x - 1.0f64).powi(2) - 1.0;
        assert_abs_diff_eq!(poly_eval(8, x), 2.0 * p4 * p4 - 1.0, epsilon = 1e-15);
        // P_12 = (P_4)^3
        assert_abs_diff_eq!(poly_eval(12, x), p4.powi(3), epsilon = 1e-15);
    }

    #[test]
    fn poly_breakpoint_table() {
        let l = level(9);
        for p in 1..=8usize {
            let deg = 1u32 << p;
            assert_abs_diff_eq!(poly_eval_angle(deg, dyadic_angle(p)), -1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(poly_eval_angle(deg, dyadic_angle(p + 1)), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(poly_eval_angle(deg, 0.0), 1.0, epsilon = 1e-12);
        }
        // at the rounded x_9 the slope of P_256 (about 4.2e4) lifts the zero to ~1.4e-12
        for p in 1..=7usize {
            let deg = 1u32 << p;
            assert_abs_diff_eq!(poly_eval(deg, l.breakpoint(p).unwrap()), -1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(poly_eval(deg, l.breakpoint(p + 1).unwrap()), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(poly_eval(deg, 1.0), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn angle_and_composition_paths_agree() {
        for n in 0..70u32 {
            for i in 0..=40 {
                let theta = PI * i as f64 / 40.0;
                let a = poly_eval_angle(n, theta);
                let b = poly_eval(n, theta.cos());
                assert!((a - b).abs() <= 1e-12 * (1.0 + n as f64), "n={n} theta={theta}");
            }
        }
    }

    #[test]
    fn poly_power_of_two_increases_on_upper_interval() {
        let l = level(7);
        for p in 1..=6usize {
            let a = l.breakpoint(p).unwrap();
            let deg = 1u32 << p;
            let mut prev = f64::NEG_INFINITY;
            for i in 0..=200 {
                let y = a + (1.0 - a) * i as f64 / 200.0;
                let v = poly_eval(deg, y);
                assert!(v > prev, "P_{deg} not increasing at {y}");
                prev = v;
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(8).unwrap(), 3);
        assert_eq!(valuation(12).unwrap(), 2);
        assert_eq!(valuation(7).unwrap(), 0);
        assert!(valuation(0).is_err());
        assert_eq!(max_valuation(8).unwrap(), 3);
        assert_eq!(max_valuation(7).unwrap(), 2);
        assert_eq!(max_valuation(1).unwrap(), 0);
        let idx = PolyIndex::new(24);
        assert_eq!((idx.p, idx.q), (3, 3));
    }

    #[test]
    fn valuation_theorem_exhaustive() {
        let mut running = 0;
        for n in 1..=1024u64 {
            running = running.max(valuation(n).unwrap());
            assert_eq!(max_valuation(n).unwrap(), running, "n = {n}");
        }
        for k in 1..20u32 {
            assert_eq!(valuation(1 << k).unwrap(), k);
            assert_eq!(valuation((1 << k) - 1).unwrap(), 0);
            assert_eq!(max_valuation((1 << k) - 1).unwrap(), k - 1);
        }
    }

    #[test]
    fn fold_map_examples() {
        let l = level(4);
        assert_eq!(l.fold_map_eval(0, 0.5).unwrap(), -0.5);
        assert_abs_diff_eq!(l.fold_map_eval(1, 1.0).unwrap(), 0.0, epsilon = 1e-16);
        // 2s^2 - 1 = -(2 * 0.64 - 1)  =>  s = 0.6
        assert_abs_diff_eq!(l.fold_map_eval(1, 0.8).unwrap(), 0.6, epsilon = 1e-15);
        let x3 = l.breakpoint(3).unwrap();
        assert_abs_diff_eq!(l.fold_map_eval(2, x3).unwrap(), x3, epsilon = 1e-15);
        for k in 0..4 {
            let xk = l.breakpoint(k).unwrap();
            let xk1 = l.breakpoint(k + 1).unwrap();
            assert_abs_diff_eq!(l.fold_map_eval(k, 1.0).unwrap(), xk, epsilon = 1e-15);
            assert_abs_diff_eq!(l.fold_map_eval(k, xk1).unwrap(), xk1, epsilon = 1e-15);
        }
    }

    #[test]
    fn fold_map_explicit_forms() {
        let l = level(4);
        for i in 0..50 {
            let y = 0.93 + 0.07 * i as f64 / 50.0;
            let c = (1.0 - y * y).sqrt();
            assert_abs_diff_eq!(l.fold_map_eval(1, y).unwrap(), c, epsilon = 1e-14);
            assert_abs_diff_eq!(
                l.fold_map_eval(2, y).unwrap(),
                (y + c) / 2f64.sqrt(),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn fold_map_domain_errors() {
        let l = level(3);
        assert!(l.fold_map_eval(1, 0.5).is_err());
        assert!(l.fold_map_eval(0, -0.1).is_err());
        assert!(l.fold_map_eval(0, 1.1).is_err());
        assert!(l.fold_map_eval(3, 0.99).is_err());
        // endpoint slack
        let x2 = l.breakpoint(2).unwrap();
        assert!(l.fold_map_eval(1, x2 - 5e-13).is_ok());
    }

    #[test]
    fn angle_form_passes_defining_relation() {
        for n in 1..=8 {
            let (inv, rel) = level(n).angle_form_residuals(200);
            assert!(inv <= 1e-12, "n={n} involution residual {inv:e}");
            assert!(rel <= 1e-11, "n={n} relation residual {rel:e}");
        }
    }

    #[test]
    fn algebraic_and_angle_paths_agree() {
        let l = level(7);
        for k in 0..7 {
            let map = l.fold_map(k).unwrap();
            let (a, b) = map.domain;
            for i in 0..200 {
                let y = a + (b - a) * i as f64 / 199.0;
                let fast = map.eval(y).unwrap();
                let slow = map.eval_algebraic(y).unwrap();
                assert!((fast - slow).abs() < 1e-6, "k={k} y={y} {fast} vs {slow}");
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let l = level(4);
        assert_eq!(l.fold_map_derivative(0, 0.3).unwrap(), -1.0);
        assert_abs_diff_eq!(
            l.fold_map_derivative(1, 0.8).unwrap(),
            -4.0 / 3.0,
            epsilon = 1e-14
        );
        let h = 1e-6;
        let y = 0.95;
        let fd = (l.fold_map_eval(2, y + h).unwrap() - l.fold_map_eval(2, y - h).unwrap()) / (2.0 * h);
        assert_abs_diff_eq!(l.fold_map_derivative(2, y).unwrap(), fd, epsilon = 1e-8);
        assert!(matches!(
            l.fold_map_derivative(1, 1.0),
            Err(Error::Singularity { k: 1, .. })
        ));
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let l = level(6);
        let h = 1e-6;
        // domains of S_0..S_3 reach below 0.99; deeper maps live entirely near y = 1
        for k in 0..4 {
            let map = l.fold_map(k).unwrap();
            let (a, _) = map.domain;
            for i in 0..100 {
                let y = a + h + (0.99 - a - h) * i as f64 / 99.0;
                let fd = (map.eval(y + h).unwrap() - map.eval(y - h).unwrap()) / (2.0 * h);
                let d = map.derivative(y).unwrap();
                assert!(d < 0.0);
                assert!((d - fd).abs() <= 1e-7, "k={k} y={y} d={d} fd={fd}");
            }
        }
        for k in 4..6 {
            let map = l.fold_map(k).unwrap();
            let (a, _) = map.domain;
            let width = 1.0 - a;
            let step = 1e-4 * width;
            for i in 1..50 {
                let y = a + 0.9 * width * i as f64 / 50.0;
                let fd = (map.eval(y + step).unwrap() - map.eval(y - step).unwrap()) / (2.0 * step);
                let d = map.derivative(y).unwrap();
                assert!(((d - fd) / d).abs() <= 1e-6, "k={k} y={y} d={d} fd={fd}");
            }
        }
    }

    #[test]
    fn fold_average_examples() {
        let l = level(3);
        assert_eq!(l.fold_average(1, |_| 2.5, 0.9).unwrap(), 2.5);
        assert_abs_diff_eq!(l.fold_average(0, |x| poly_eval(1, x), 0.4).unwrap(), 0.0);
        assert_abs_diff_eq!(
            l.fold_average(1, |x| poly_eval(2, x), 0.9).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            l.fold_average(1, |x| poly_eval(4, x), 0.9).unwrap(),
            poly_eval(4, 0.9),
            epsilon = 1e-14
        );
    }

    #[test]
    fn fold_compose_examples() {
        let l3 = level(3);
        for j in 1..8u32 {
            let v = l3.fold_compose(|x| poly_eval(j, x), 0.99).unwrap();
            assert!(v.abs() <= 1e-10, "P_{j}: {v:e}");
        }
        assert_abs_diff_eq!(l3.fold_compose(|_| 7.0, 0.95).unwrap(), 7.0, epsilon = 1e-14);
        let l1 = level(1);
        assert_abs_diff_eq!(l1.fold_compose(|x| x * x, 0.5).unwrap(), 0.25, epsilon = 1e-15);
        assert!(l3.fold_compose(|x| x, 0.5).is_err());
    }

    #[test]
    fn fold_compose_matches_nested_averages() {
        // explicit nesting R_{n-1}(R_{n-2}(...R_0(f)))
        fn nested(l: &DyadicLevel, k: usize, f: &dyn Fn(f64) -> f64, y: f64) -> f64 {
            if k == 0 {
                return l.fold_average(0, f, y).unwrap();
            }
            let inner = |z: f64| nested(l, k - 1, f, z);
            l.fold_average(k, inner, y).unwrap()
        }
        let f = |x: f64| (1.3 * x).exp() + x.powi(3);
        for n in 1..=5 {
            let l = level(n);
            let a = l.breakpoint(n).unwrap();
            for i in 0..10 {
                let y = a + (1.0 - a) * (i as f64 + 0.5) / 10.0;
                let direct = l.fold_compose(f, y).unwrap();
                let nest = nested(&l, n - 1, &f, y);
                assert_abs_diff_eq!(direct, nest, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn fold_angle_is_triangle_wave() {
        for n in 1..=6 {
            let h = dyadic_angle(n);
            for i in 0..=997 {
                let theta = PI * i as f64 / 997.0;
                let r = theta % (2.0 * h);
                let tri = r.min(2.0 * h - r);
                assert_abs_diff_eq!(fold_angle(n, theta), tri, epsilon = 1e-13);
            }
        }
    }
}

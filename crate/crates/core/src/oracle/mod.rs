//! Reference integration of `f · ρ` over `(-1, 1)`.
//!
//! With `x = cos θ` the weighted integral becomes `∫_0^π f(cos θ) w(θ) dθ`,
//! where `w` is the unfolded angle generator. That integrand has no endpoint
//! singularity, and it is smooth on every image of the fundamental angle
//! interval, so those images are used as the initial panels.

pub mod adaptive;
pub mod gauss;

use crate::basis::chebyshev_t;
use crate::dyadic::DyadicLevel;
use crate::error::{Error, Result};
use crate::weights::WeightSpec;

/// Default oracle tolerance.
pub const DEFAULT_TOL: f64 = 1e-11;

/// Smallest accepted tolerance.
pub const MIN_TOL: f64 = 1e-13;

/// An integral value with an error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub panels_used: usize,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol >= MIN_TOL && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "oracle tolerance must be >= {MIN_TOL:e}, got {tol:e}"
        )))
    }
}

/// `∫_{-1}^1 f(x) ρ(x) dx` in the angle variable.
pub fn integrate_weighted<F>(spec: &WeightSpec, f: F, tol: f64) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> f64,
{
    check_tol(tol)?;
    adaptive::integrate(
        |t: f64| f(t.cos()) * spec.angle_density(t),
        &spec.panel_edges(),
        tol,
    )
}

/// `2^n ∫_{x_n}^1 (R_{n-1} ∘ … ∘ R_0)(f)(x) ρ(x) dx`, integrated over the
/// fundamental angle interval only.
///
/// Equal to [`integrate_weighted`] for every member of `W_n`.
pub fn fold_integrate<F>(spec: &WeightSpec, f: F, tol: f64) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> f64,
{
    check_tol(tol)?;
    let level = DyadicLevel::new(spec.n())?;
    let scale = (1u64 << spec.n()) as f64;
    // the scaled integral must meet tol * (1 + |value|) after multiplying by 2^n
    let est = adaptive::integrate(
        |t: f64| level.fold_compose_angle(&f, t) * spec.fundamental_density(t),
        &spec.fundamental_edges(),
        tol / scale,
    )?;
    Ok(IntegralEstimate {
        value: scale * est.value,
        error_bound: scale * est.error_bound,
        panels_used: est.panels_used,
    })
}

/// Source of the moments `∫ T_j ρ` a rule is checked against.
pub trait MomentOracle {
    fn chebyshev_moment(&self, j: usize) -> Result<IntegralEstimate>;
}

/// Numerical moments of a [`WeightSpec`].
#[derive(Debug, Clone)]
pub struct WeightedOracle<'a> {
    pub spec: &'a WeightSpec,
    pub tol: f64,
}

impl<'a> WeightedOracle<'a> {
    pub fn new(spec: &'a WeightSpec, tol: f64) -> Self {
        Self { spec, tol }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> Result<IntegralEstimate> {
        integrate_weighted(self.spec, f, self.tol)
    }
}

impl MomentOracle for WeightedOracle<'_> {
    fn chebyshev_moment(&self, j: usize) -> Result<IntegralEstimate> {
        self.integrate(|x| chebyshev_t(j, x))
    }
}

/// Closed-form moments of `1/(π sqrt(1 - x²))`: `1` for `j = 0`, else `0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ChebyshevMoments;

impl MomentOracle for ChebyshevMoments {
    fn chebyshev_moment(&self, j: usize) -> Result<IntegralEstimate> {
        Ok(IntegralEstimate {
            value: if j == 0 { 1.0 } else { 0.0 },
            error_bound: 0.0,
            panels_used: 1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::poly_eval;
    use crate::weights::builtin_weight;
    use approx::assert_abs_diff_eq;

    #[test]
    fn chebyshev_normalization_and_orthogonality() {
        let w = builtin_weight("chebyshev", 3).unwrap();
        let one = integrate_weighted(&w, |_| 1.0, DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(one.value, 1.0, epsilon = 1e-11);
        for j in 1..40 {
            let est = integrate_weighted(&w, |x| chebyshev_t(j, x), DEFAULT_TOL).unwrap();
            assert!(est.value.abs() <= DEFAULT_TOL, "T_{j}: {:e}", est.value);
            assert!(est.value.abs() <= est.error_bound.max(1e-15) * 10.0 + 1e-14);
        }
    }

    #[test]
    fn half_second_moment() {
        let w = builtin_weight("half", 1).unwrap();
        let est = integrate_weighted(&w, |x| x * x, DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(est.value, 1.0 / 3.0, epsilon = 1e-11);
        assert!(est.panels_used >= 2);
    }

    #[test]
    fn fold_integrate_examples() {
        let c1 = builtin_weight("chebyshev", 1).unwrap();
        assert_abs_diff_eq!(
            fold_integrate(&c1, |x| x, DEFAULT_TOL).unwrap().value,
            0.0,
            epsilon = 1e-15
        );
        let c3 = builtin_weight("chebyshev", 3).unwrap();
        let folded = fold_integrate(&c3, |x| x * x, DEFAULT_TOL).unwrap().value;
        let direct = integrate_weighted(&c3, |x| x * x, DEFAULT_TOL).unwrap().value;
        assert_abs_diff_eq!(folded, 0.5, epsilon = 1e-11);
        assert!((folded - direct).abs() <= 2.0 * DEFAULT_TOL);
        for name in ["chebyshev", "angle-poly:2,1,1", "angle-bump:0.3,0.6"] {
            let w = builtin_weight(name, 3).unwrap();
            for j in 1..8u32 {
                let v = fold_integrate(&w, |x| poly_eval(j, x), DEFAULT_TOL)
                    .unwrap()
                    .value;
                assert!(v.abs() <= DEFAULT_TOL, "{name} P_{j}: {v:e}");
            }
        }
    }

    #[test]
    fn rejects_tiny_tolerance() {
        let w = builtin_weight("chebyshev", 1).unwrap();
        assert!(integrate_weighted(&w, |_| 1.0, 1e-14).is_err());
        assert!(fold_integrate(&w, |_| 1.0, 0.0).is_err());
    }

    #[test]
    fn closed_form_moments() {
        assert_eq!(ChebyshevMoments.chebyshev_moment(0).unwrap().value, 1.0);
        assert_eq!(ChebyshevMoments.chebyshev_moment(5).unwrap().value, 0.0);
    }
}

//! Equal-weight (Chebyshev-type) quadrature for the weight classes `W_n`.
//!
//! A weight in `W_n` is invariant, in the `w = ρ sqrt(1 - x²)` sense, under
//! the fold maps `S_0, …, S_{n-1}`. Unfolding a seed point of the
//! fundamental interval `[x_n, 1]` through those maps gives node sets on
//! which the plain average `(1/m) Σ f(t_j)` integrates every polynomial of
//! degree `2^n - 1` exactly; the seed `x_n` alone gives `m = 2^{n-1}` nodes
//! and therefore the highest possible degree `2m - 1`.
//!
//! - [`dyadic`]: breakpoints, `P_n`, fold maps and averaging operators.
//! - [`weights`]: construction and membership testing of `W_n` members.
//! - [`quadrature`]: node unfolding, closure checks, rules and exactness.
//! - [`oracle`]: the reference integrator everything is checked against.
//! - [`cli`]: the `foldquad` command line.

// NaN-rejecting guards are written as negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod cli;
pub mod dyadic;
pub mod error;
pub mod oracle;
pub mod quadrature;
pub mod rule_file;
pub mod sum;
pub mod weights;

pub use dyadic::{max_valuation, poly_eval, valuation, DyadicLevel, FoldMap, PolyIndex};
pub use error::{Error, Result};
pub use oracle::{fold_integrate, integrate_weighted, IntegralEstimate, MomentOracle, WeightedOracle};
pub use quadrature::{
    apply_rule, degree_of_exactness, gauss_bound_witness, minimal_rule, unfold_seed, validate_closure,
    NodeSet, QuadratureRule,
};
pub use weights::{builtin_weight, BlackBoxWeight, WeightFamily, WeightSpec};

//! Globally adaptive bisection over fixed panel edges.
//!
//! Each panel is integrated with a 12- and a 24-point Gauss–Legendre rule;
//! the 24-point value is kept and the difference between the two is its
//! error bound. The panel with the largest bound is bisected until the sum
//! of bounds drops below `tol · (1 + |value|)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::gauss::{HIGH, LOW};
use super::IntegralEstimate;
use crate::error::{Error, Result};
use crate::sum::compensated_sum;

/// Subdivision budget.
pub const MAX_PANELS: usize = 1 << 20;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl Panel {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Self {
        let hi = HIGH.apply(f, a, b);
        let lo = LOW.apply(f, a, b);
        Self {
            a,
            b,
            value: hi,
            error: (hi - lo).abs(),
        }
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// `∫ f` over `[edges[0], edges[last]]` with panel seams pinned at `edges`.
///
/// `edges` must be sorted ascending; repeated edges are skipped.
pub fn integrate<F: Fn(f64) -> f64>(f: F, edges: &[f64], tol: f64) -> Result<IntegralEstimate> {
    integrate_with_budget(f, edges, tol, MAX_PANELS)
}

pub fn integrate_with_budget<F: Fn(f64) -> f64>(
    f: F,
    edges: &[f64],
    tol: f64,
    max_panels: usize,
) -> Result<IntegralEstimate> {
    if edges.len() < 2 {
        return Err(Error::Domain("at least two panel edges are required".into()));
    }
    let mut heap = BinaryHeap::new();
    for w in edges.windows(2) {
        if !(w[1] >= w[0]) {
            return Err(Error::Domain(format!(
                "panel edges not sorted: {} > {}",
                w[0], w[1]
            )));
        }
        if w[1] > w[0] {
            heap.push(Panel::new(&f, w[0], w[1]));
        }
    }
    if heap.is_empty() {
        return Ok(IntegralEstimate {
            value: 0.0,
            error_bound: 0.0,
            panels_used: 1,
        });
    }
    loop {
        let value = compensated_sum(heap.iter().map(|p| p.value));
        let error = compensated_sum(heap.iter().map(|p| p.error));
        if !value.is_finite() {
            return Err(Error::Domain("integrand produced a non-finite value".into()));
        }
        if error <= tol * (1.0 + value.abs()) {
            return Ok(IntegralEstimate {
                value,
                error_bound: error,
                panels_used: heap.len(),
            });
        }
        // bisect a batch of the worst panels before re-summing
        let batch = (heap.len() / 8).max(1);
        for _ in 0..batch {
            if heap.len() >= max_panels {
                return Err(Error::NonConvergence {
                    estimate: value,
                    error_bound: error,
                    panels: heap.len(),
                });
            }
            let worst = heap.pop().expect("non-empty heap");
            let mid = 0.5 * (worst.a + worst.b);
            if !(mid > worst.a && mid < worst.b) {
                // interval exhausted at machine resolution
                return Err(Error::NonConvergence {
                    estimate: value,
                    error_bound: error,
                    panels: heap.len() + 1,
                });
            }
            heap.push(Panel::new(&f, worst.a, mid));
            heap.push(Panel::new(&f, mid, worst.b));
        }
    }
}

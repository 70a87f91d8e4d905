use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::sampler::StateKind;

pub const EPSILON_GRID_POINTS: usize = 200;

/// Upper bound on the expected overlap obtained by splitting the sphere into
/// states localized on one coordinate and the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub dim: usize,
    pub kind: StateKind,
    pub epsilon: f64,
    pub bound: f64,
    pub optimal_epsilon: f64,
    pub optimal_bound: f64,
}

/// Log-uniform points strictly inside `(1e-6, 1)`, at cell midpoints.
pub fn epsilon_grid() -> Vec<f64> {
    (0..EPSILON_GRID_POINTS)
        .map(|k| {
            let t = (k as f64 + 0.5) / EPSILON_GRID_POINTS as f64;
            math::powf(10.0, -6.0 * (1.0 - t))
        })
        .collect()
}

/// `1/N + 2ε + N²(1−ε)^N` for real states, `1/N + 2ε + (2N)²(1−ε)^{2N}`
/// for complex ones.
fn bound_value(dim: usize, epsilon: f64, kind: StateKind) -> f64 {
    let n = dim as f64;
    let m = match kind {
        StateKind::Real => n,
        StateKind::Complex => 2.0 * n,
    };
    1.0 / n + 2.0 * epsilon + m * m * math::powf(1.0 - epsilon, m)
}

pub fn theorem_bound(dim: usize, epsilon: f64, kind: StateKind) -> Result<BoundReport> {
    if dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("epsilon {epsilon} outside (0, 1)")));
    }
    let (optimal_epsilon, optimal_bound) = epsilon_grid()
        .into_iter()
        .map(|e| (e, bound_value(dim, e, kind)))
        .fold((f64::NAN, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    Ok(BoundReport { dim, kind, epsilon, bound: bound_value(dim, epsilon, kind), optimal_epsilon, optimal_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_arithmetic() {
        let r = theorem_bound(100, 0.1, StateKind::Real).unwrap();
        let oracle = 1.0 / 100.0 + 0.2 + 1e4 * 0.9f64.powi(100);
        assert!((r.bound - oracle).abs() < 1e-12);
        assert!((r.bound - 0.4756).abs() < 1e-4);
        let c = theorem_bound(100, 0.1, StateKind::Complex).unwrap();
        assert!((c.bound - (0.01 + 0.2 + 4e4 * 0.9f64.powi(200))).abs() < 1e-12);
    }

    #[test]
    fn grid_shape() {
        let g = epsilon_grid();
        assert_eq!(g.len(), 200);
        assert!(g[0] > 1e-6 && g[199] < 1.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn large_dim_limit_is_two_epsilon() {
        for eps in [0.05, 0.2] {
            let r = theorem_bound(1 << 20, eps, StateKind::Real).unwrap();
            assert!((r.bound - 2.0 * eps).abs() < 1e-5);
        }
    }

    #[test]
    fn optimum_dominates_grid_and_decreases() {
        for kind in [StateKind::Real, StateKind::Complex] {
            let mut prev = f64::INFINITY;
            for k in 1..=12 {
                let dim = 1usize << k;
                let r = theorem_bound(dim, 0.3, kind).unwrap();
                let scan = epsilon_grid().into_iter().map(|e| bound_value(dim, e, kind));
                assert!(scan.clone().all(|b| r.optimal_bound <= b));
                assert!(r.optimal_bound <= prev);
                prev = r.optimal_bound;
            }
        }
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert!(theorem_bound(4, 0.0, StateKind::Real).is_err());
        assert!(theorem_bound(4, 1.0, StateKind::Real).is_err());
        assert!(theorem_bound(0, 0.5, StateKind::Real).is_err());
    }
}

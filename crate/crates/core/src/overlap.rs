//! The strict-dominance overlap
//!
//! ```text
//! ρ(ψ₀|ψ₁) = ∫ dq χ[|ψ₀(q)| < |ψ₁(q)|] |ψ₀(q)|²
//! ```
//!
//! i.e. the `|ψ₀|²`-probability of the region where `ψ₁` strictly
//! dominates. Ties contribute nothing.

use alloc::string::ToString;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exec::{run_chunked, Executor};
use crate::grid::{BinaryState, GridFunction, GridSampler, ProductState};
use crate::math;
use crate::sampler::StateVector;
use crate::seed::SeedSpec;
use crate::stats::{OverlapEstimate, RunningMoments};

/// `Σᵢ χ[m₀ⁱ < m₁ⁱ] m₀ⁱ` over squared moduli.
#[inline]
pub fn dominance_overlap(moduli0: &[f64], moduli1: &[f64]) -> f64 {
    moduli0.iter().zip(moduli1).map(|(&a, &b)| if a < b { a } else { 0.0 }).sum()
}

pub fn overlap_discrete(psi0: &StateVector, psi1: &StateVector) -> Result<f64> {
    if psi0.dim() != psi1.dim() || psi0.kind() != psi1.kind() {
        return Err(Error::IncompatibleStates(alloc::format!(
            "{:?} state of dimension {} vs {:?} state of dimension {}",
            psi0.kind(),
            psi0.dim(),
            psi1.kind(),
            psi1.dim()
        )));
    }
    Ok(dominance_overlap(&psi0.moduli_sq(), &psi1.moduli_sq()).clamp(0.0, 1.0))
}

fn check_grids(f0: &GridFunction, f1: &GridFunction) -> Result<()> {
    if f0.same_grid(f1) {
        Ok(())
    } else {
        Err(Error::IncompatibleGrids(alloc::format!(
            "({}, {}, {} nodes) vs ({}, {}, {} nodes)",
            f0.start(),
            f0.step(),
            f0.len(),
            f1.start(),
            f1.step(),
            f1.len()
        )))
    }
}

/// `χ[f₀ < f₁]` at every node.
pub fn dominance_indicator(f0: &[f64], f1: &[f64]) -> Vec<bool> {
    f0.iter().zip(f1).map(|(a, b)| a < b).collect()
}

/// Trapezoidal quadrature of `χ[f₀ < f₁] f₀²` on the shared grid.
pub fn overlap_grid(f0: &GridFunction, f1: &GridFunction) -> Result<f64> {
    check_grids(f0, f1)?;
    let last = f0.len() - 1;
    let sum: f64 = f0
        .values()
        .iter()
        .zip(f1.values())
        .enumerate()
        .filter(|(_, (a, b))| a < b)
        .map(|(i, (a, _))| if i == 0 || i == last { 0.5 * a * a } else { a * a })
        .sum();
    Ok((f0.step() * sum).clamp(0.0, 1.0))
}

fn check_products(p0: &ProductState, p1: &ProductState) -> Result<()> {
    if p0.len() != p1.len() {
        return Err(Error::IncompatibleStates(alloc::format!("{} factors vs {} factors", p0.len(), p1.len())));
    }
    for (i, (a, b)) in p0.factors().iter().zip(p1.factors()).enumerate() {
        check_grids(a, b).map_err(|e| Error::IncompatibleStates(alloc::format!("factor {i}: {e}")))?;
    }
    Ok(())
}

/// `χ[∏ aᵢ < ∏ bᵢ]` for non-negative factor values.
///
/// Compared through `Σ (ln bᵢ − ln aᵢ) > 0`; zeros follow the limit of the
/// strict comparison: a zero on the `b` side gives 0, otherwise a zero on
/// the `a` side gives 1.
pub fn product_dominates(pairs: impl IntoIterator<Item = (f64, f64)>) -> bool {
    let mut log_ratio = 0.0;
    let mut a_zero = false;
    for (a, b) in pairs {
        if b <= 0.0 {
            return false;
        }
        if a <= 0.0 {
            a_zero = true;
        } else if !a_zero {
            log_ratio += math::ln(b) - math::ln(a);
        }
    }
    a_zero || log_ratio > 0.0
}

/// Monte Carlo estimate of `ρ(P₀|P₁)` for product states.
///
/// Each coordinate is drawn from `f₀ᵢ²` by inverse CDF. Sample `k` uses the
/// generator `seed.sample_rng(k)`, one uniform per factor in order.
pub fn overlap_product_mc<E: Executor + ?Sized>(
    p0: &ProductState,
    p1: &ProductState,
    samples: u64,
    seed: SeedSpec,
    exec: &E,
) -> Result<OverlapEstimate> {
    check_products(p0, p1)?;
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".to_string()));
    }
    let samplers: Vec<GridSampler> = p0.factors().iter().map(GridSampler::new).collect();
    let moments = run_chunked(
        exec,
        samples,
        |range| {
            let mut m = RunningMoments::new();
            for k in range {
                let mut rng = seed.sample_rng(k);
                let hit = product_dominates(samplers.iter().zip(p0.factors().iter().zip(p1.factors())).map(
                    |(s, (f0, f1))| {
                        let q = s.sample(rng.random::<f64>());
                        (f0.value_at(q), f1.value_at(q))
                    },
                ));
                m.push(if hit { 1.0 } else { 0.0 });
            }
            m
        },
        RunningMoments::merge,
    )
    .unwrap_or_default();
    Ok(OverlapEstimate::from_moments(&moments, seed))
}

/// Overlap of binary product states: the product of the per-subsystem
/// overlap probabilities.
pub fn overlap_binary(b0: &BinaryState, b1: &BinaryState, per_system: &[f64]) -> Result<f64> {
    if b0.len() != b1.len() || b0.len() != per_system.len() {
        return Err(Error::IncompatibleStates(alloc::format!(
            "system counts {}, {} and {} overlap probabilities",
            b0.len(),
            b1.len(),
            per_system.len()
        )));
    }
    if let Some(p) = per_system.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidParameter(alloc::format!("overlap probability {p} outside [0, 1]")));
    }
    Ok(per_system.iter().product())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaximaDistance {
    /// `sqrt(Σ Δᵢ²)`
    pub total: f64,
    pub per_factor: Vec<f64>,
}

/// Distance between the maxima of two product states, composed from the
/// per-factor argmax distances.
pub fn maxima_distance(p0: &ProductState, p1: &ProductState) -> Result<MaximaDistance> {
    check_products(p0, p1)?;
    let argmax = |f: &GridFunction, factor: usize| {
        f.unique_argmax().ok_or(Error::AmbiguousMaximum { factor, count: f.argmax_tie_count() })
    };
    let per_factor = p0
        .factors()
        .iter()
        .zip(p1.factors())
        .enumerate()
        .map(|(i, (f0, f1))| Ok((f1.node(argmax(f1, i)?) - f0.node(argmax(f0, i)?)).abs()))
        .collect::<Result<Vec<f64>>>()?;
    let total = math::sqrt(per_factor.iter().map(|d| d * d).sum());
    Ok(MaximaDistance { total, per_factor })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ridge {
    /// `q_max` with `f₀(q_max) = f₁(q_max)`.
    pub crossing: f64,
    /// `f₀(q_max)`
    pub crossing_value: f64,
    /// `f₀(q_max)ⁿ`, the largest value of `min(ψ₀, ψ₁)` on the segment
    /// joining the maxima of the `n`-fold products.
    pub ridge_max: f64,
}

const RIDGE_TOLERANCE: f64 = 1e-10;

/// Locates the crossing of two unimodal factors between their maxima.
pub fn ridge_value(f0: &GridFunction, f1: &GridFunction, n: u32) -> Result<Ridge> {
    check_grids(f0, f1)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".to_string()));
    }
    let a0 = f0.unique_argmax().ok_or(Error::AmbiguousMaximum { factor: 0, count: f0.argmax_tie_count() })?;
    let a1 = f1.unique_argmax().ok_or(Error::AmbiguousMaximum { factor: 1, count: f1.argmax_tie_count() })?;
    if a0 == a1 {
        return Err(Error::AmbiguousCrossing("both functions peak at the same node".to_string()));
    }
    let (lo, hi) = (a0.min(a1), a0.max(a1));
    let diff = |i: usize| f0.values()[i] - f1.values()[i];

    // nonzero-sign nodes and zero runs between the maxima
    let mut prev: Option<(usize, bool)> = None;
    let mut bracket = None;
    let mut changes = 0;
    for i in lo..=hi {
        let d = diff(i);
        if d == 0.0 {
            continue;
        }
        let positive = d > 0.0;
        if let Some((j, p)) = prev {
            if p != positive {
                changes += 1;
                bracket = Some((j, i));
            }
        }
        prev = Some((i, positive));
    }
    let (left, right) = match (changes, bracket) {
        (0, _) if prev.is_none() => {
            return Err(Error::AmbiguousCrossing("functions coincide between their maxima".to_string()))
        }
        (0, _) => return Err(Error::NoCrossing),
        (1, Some(b)) => b,
        _ => return Err(Error::AmbiguousCrossing(alloc::format!("{changes} sign changes between the maxima"))),
    };
    let crossing = match right - left {
        1 => {
            let g = |q: f64| f0.value_at(q) - f1.value_at(q);
            let (mut a, mut b) = (f0.node(left), f0.node(right));
            let left_positive = g(a) > 0.0;
            while b - a > RIDGE_TOLERANCE {
                let mid = 0.5 * (a + b);
                let gm = g(mid);
                if gm == 0.0 {
                    a = mid;
                    b = mid;
                } else if (gm > 0.0) == left_positive {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            0.5 * (a + b)
        }
        2 => f0.node(left + 1),
        _ => return Err(Error::AmbiguousCrossing("functions coincide on an interval".to_string())),
    };
    let crossing_value = f0.value_at(crossing);
    Ok(Ridge { crossing, crossing_value, ridge_max: math::powi(crossing_value, n as i32) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn real(a: &[f64]) -> StateVector {
        StateVector::real(a.to_vec()).unwrap()
    }

    fn displaced(mean: f64, step: f64) -> GridFunction {
        let nodes = (18.0 / step).round() as usize + 1;
        GridFunction::from_fn(-8.0, step, nodes, |q| math::sqrt(math::normal_pdf(q, mean))).unwrap()
    }

    #[test]
    fn discrete_examples() {
        let e1 = real(&[1.0, 0.0, 0.0]);
        assert_eq!(overlap_discrete(&e1, &e1).unwrap(), 0.0);
        assert_eq!(overlap_discrete(&real(&[0.0, 1.0]), &real(&[1.0, 0.0])).unwrap(), 0.0);
        let h = real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let v = overlap_discrete(&h, &real(&[1.0, 0.0])).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn discrete_mismatch() {
        let a = real(&[1.0, 0.0]);
        let b = real(&[1.0, 0.0, 0.0]);
        assert!(matches!(overlap_discrete(&a, &b), Err(Error::IncompatibleStates(_))));
        let c = StateVector::complex(vec![num_complex::Complex64::new(1.0, 0.0), 0.0.into()]).unwrap();
        assert!(matches!(overlap_discrete(&a, &c), Err(Error::IncompatibleStates(_))));
    }

    #[test]
    fn grid_ties_and_disjoint() {
        let f = displaced(0.0, 0.01);
        assert_eq!(overlap_grid(&f, &f).unwrap(), 0.0);
        let a = GridFunction::normalized(0.0, 1.0, vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        let b = GridFunction::normalized(0.0, 1.0, vec![0.0, 0.0, 1.0, 1.0]).unwrap();
        assert_eq!(overlap_grid(&a, &b).unwrap(), 0.0);
        let other = GridFunction::normalized(0.5, 1.0, vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(overlap_grid(&a, &other), Err(Error::IncompatibleGrids(_))));
    }

    #[test]
    fn grid_normal_tail() {
        let v = overlap_grid(&displaced(0.0, 0.001), &displaced(2.0, 0.001)).unwrap();
        assert!((v - 0.158_655_253_931_457).abs() < 5e-4, "{v}");
    }

    #[test]
    fn indicator_is_scale_free() {
        let f0 = displaced(0.0, 0.01);
        let f1 = displaced(1.3, 0.01);
        let scaled = |f: &GridFunction| f.values().iter().map(|v| v * 7.25).collect::<Vec<_>>();
        assert_eq!(
            dominance_indicator(f0.values(), f1.values()),
            dominance_indicator(&scaled(&f0), &scaled(&f1))
        );
    }

    #[test]
    fn product_dominance_conventions() {
        assert!(!product_dominates([(0.3, 0.3)]));
        assert!(product_dominates([(0.0, 0.1), (2.0, 0.1)]));
        assert!(!product_dominates([(0.5, 0.0), (0.1, 3.0)]));
        assert!(!product_dominates([(0.0, 0.0)]));
        assert!(product_dominates([(0.5, 1.0), (1.0, 0.6)]));
        assert!(!product_dominates([(0.5, 1.0), (1.0, 0.4)]));
    }

    #[test]
    fn product_mc_identical_states_is_zero() {
        let p = ProductState::repeated(&displaced(0.0, 0.01), 3).unwrap();
        let est = overlap_product_mc(&p, &p, 10_000, SeedSpec::new(1, 0), &Sequential).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.std_error, 0.0);
        assert_eq!(est.samples, 10_000);
    }

    #[test]
    fn product_mc_mismatch() {
        let f = displaced(0.0, 0.01);
        let p2 = ProductState::repeated(&f, 2).unwrap();
        let p3 = ProductState::repeated(&f, 3).unwrap();
        assert!(overlap_product_mc(&p2, &p3, 10, SeedSpec::default(), &Sequential).is_err());
        assert!(overlap_product_mc(&p2, &p2, 0, SeedSpec::default(), &Sequential).is_err());
    }

    #[test]
    fn binary_examples() {
        let b = |n| BinaryState::new(vec![0.5; n]).unwrap();
        assert_eq!(overlap_binary(&b(10), &b(10), &[0.5; 10]).unwrap(), 0.0009765625);
        assert_eq!(overlap_binary(&b(3), &b(3), &[1.0, 1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(overlap_binary(&b(3), &b(3), &[0.3, 0.0, 0.9]).unwrap(), 0.0);
        assert!(overlap_binary(&b(3), &b(2), &[0.3, 0.0, 0.9]).is_err());
        assert!(overlap_binary(&b(2), &b(2), &[0.3, 1.2]).is_err());
    }

    #[test]
    fn maxima_distance_examples() {
        let g = |m: f64| displaced(m, 0.01);
        let p0 = ProductState::new(vec![g(0.0), g(0.0)]).unwrap();
        let p1 = ProductState::new(vec![g(3.0), g(4.0)]).unwrap();
        let d = maxima_distance(&p0, &p1).unwrap();
        assert!((d.total - 5.0).abs() < 1e-9);
        assert_eq!(d.per_factor.len(), 2);
        assert_eq!(maxima_distance(&p0, &p0).unwrap().total, 0.0);

        let flat = GridFunction::normalized(-8.0, 0.01, vec![1.0; 1801]).unwrap();
        let pf = ProductState::new(vec![flat.clone(), flat]).unwrap();
        assert!(matches!(maxima_distance(&pf, &p1), Err(Error::AmbiguousMaximum { factor: 0, .. })));
    }

    #[test]
    fn ridge_examples() {
        let (f0, f1) = (displaced(0.0, 0.001), displaced(2.0, 0.001));
        let r1 = ridge_value(&f0, &f1, 1).unwrap();
        assert!((r1.crossing - 1.0).abs() < 1e-6, "{r1:?}");
        assert!((r1.crossing_value - f1.value_at(r1.crossing)).abs() < 1e-9);
        let r10 = ridge_value(&f0, &f1, 10).unwrap();
        assert!((r10.ridge_max - r10.crossing_value.powi(10)).abs() < 1e-15);
        let reversed = ridge_value(&f1, &f0, 1).unwrap();
        assert!((reversed.crossing - 1.0).abs() < 1e-6);
        assert!(matches!(ridge_value(&f0, &f0, 1), Err(Error::AmbiguousCrossing(_))));
    }

    #[test]
    fn ridge_sign_change_errors() {
        // f0 stays above f1 between the two maxima
        let mut v0 = vec![0.0; 100];
        v0[1] = 10.0;
        v0[2] = 9.0;
        let mut v1 = vec![1.0; 100];
        v1[2] = 1.01;
        let f0 = GridFunction::normalized(0.0, 1.0, v0).unwrap();
        let f1 = GridFunction::normalized(0.0, 1.0, v1).unwrap();
        assert_eq!(ridge_value(&f0, &f1, 1), Err(Error::NoCrossing));
        // crossing back and forth
        let g0 = GridFunction::normalized(0.0, 1.0, vec![5.0, 1.0, 3.0, 1.0, 0.5, 0.1]).unwrap();
        let g1 = GridFunction::normalized(0.0, 1.0, vec![0.1, 2.0, 1.0, 2.0, 1.0, 5.0]).unwrap();
        assert!(matches!(ridge_value(&g0, &g1, 1), Err(Error::AmbiguousCrossing(_))));
    }
}

//! Orthogonal one-particle states described over two field-mode beables.
//!
//! `|ψ₀| ∝ |q₁| e^{−(q₁²+q₂²)/2}` and `|ψ₁| ∝ |q₂| e^{−(q₁²+q₂²)/2}` are
//! first-excited oscillator states of two different modes; every other mode
//! factors out of the dominance condition `|q₁| < |q₂|`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::grid::{GridFunction, ProductState};
use crate::math;
use crate::overlap::overlap_product_mc;
use crate::seed::SeedSpec;
use crate::stats::OverlapEstimate;

/// `1/2 − 1/π`, the overlap in closed form.
pub const UNIVERSAL_OVERLAP: f64 = 0.5 - math::FRAC_1_PI;

/// 2-D trapezoidal quadrature of `χ[|q₁| < |q₂|] |ψ₀|²` on
/// `[−extent, extent]²`.
///
/// The box is symmetric, so the diagonals `|q₁| = |q₂|` pass through nodes.
/// Those boundary nodes get half weight; counting them as ties (weight 0)
/// leaves an `O(step)` bias of about `0.1 · step`.
pub fn counterexample_overlap(step: f64, extent: f64) -> Result<f64> {
    if !(step > 0.0 && step <= 0.01) {
        return Err(Error::InvalidParameter(alloc::format!("quadrature step {step} outside (0, 0.01]")));
    }
    if !(extent >= 8.0 && extent.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("extent {extent} below 8")));
    }
    let cells = libm::round(2.0 * extent / step) as i64;
    let half = step / 2.0;
    // node j sits at (2j − cells)·step/2; |2j − cells| orders |q| exactly
    let keys: Vec<i64> = (0..=cells).map(|j| (2 * j - cells).abs()).collect();
    let weight = |j: usize| if j == 0 || j == cells as usize { 0.5 } else { 1.0 };
    let q = |j: usize| keys[j] as f64 * half;
    let excited: Vec<f64> = (0..keys.len()).map(|j| weight(j) * q(j) * q(j) * math::exp(-q(j) * q(j))).collect();
    let ground: Vec<f64> = (0..keys.len()).map(|j| weight(j) * math::exp(-q(j) * q(j))).collect();

    let norm = excited.iter().sum::<f64>() * ground.iter().sum::<f64>();
    let mut dominated = 0.0;
    for (i, a) in excited.iter().enumerate() {
        let mut row = 0.0;
        for (j, b) in ground.iter().enumerate() {
            if keys[i] < keys[j] {
                row += b;
            } else if keys[i] == keys[j] {
                row += 0.5 * b;
            }
        }
        dominated += a * row;
    }
    Ok(dominated / norm)
}

/// Monte Carlo re-estimate of the counterexample through
/// [`overlap_product_mc`]: `ψ₀ = φ₁(q₁)φ₀(q₂)` and `ψ₁ = φ₀(q₁)φ₁(q₂)` as
/// products of tabulated mode functions on `[−10, 10]` with step `0.001`.
pub fn counterexample_mc<E: Executor + ?Sized>(samples: u64, seed: SeedSpec, exec: &E) -> Result<OverlapEstimate> {
    let (start, step, nodes) = (-10.0, 0.001, 20_001);
    let ground = GridFunction::from_fn(start, step, nodes, |q| math::exp(-0.5 * q * q))?;
    let excited = GridFunction::from_fn(start, step, nodes, |q| q.abs() * math::exp(-0.5 * q * q))?;
    let p0 = ProductState::new(alloc::vec![excited.clone(), ground.clone()])?;
    let p1 = ProductState::new(alloc::vec![ground, excited])?;
    overlap_product_mc(&p0, &p1, samples, seed, exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_value() {
        assert!((UNIVERSAL_OVERLAP - 0.18169).abs() < 1e-5);
    }

    #[test]
    fn coarse_quadrature_is_close() {
        let v = counterexample_overlap(0.01, 8.0).unwrap();
        assert!((v - UNIVERSAL_OVERLAP).abs() < 1e-5, "{v}");
    }

    #[test]
    fn rejects_coarse_or_small_boxes() {
        assert!(counterexample_overlap(0.02, 10.0).is_err());
        assert!(counterexample_overlap(0.005, 7.0).is_err());
        assert!(counterexample_overlap(0.0, 10.0).is_err());
    }
}

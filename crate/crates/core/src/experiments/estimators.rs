//! Monte Carlo estimators of the expected overlap between random states.

use alloc::vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::exec::{run_chunked, Executor};
use crate::math;
use crate::overlap::dominance_overlap;
use crate::sampler::{fill_complex_moduli_sq, fill_cube, fill_normals, fill_real_moduli_sq, max_abs};
use crate::seed::{SampleRng, SeedSpec};
use crate::stats::{OverlapEstimate, RunningMoments};

/// `E(2) = 1/2 − 2/π²`.
pub const E2_EXACT: f64 = 0.5 - 2.0 / (math::PI * math::PI);

fn validate(dim: usize, samples: u64) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if samples < 2 {
        return Err(Error::InvalidParameter(alloc::format!("need at least 2 samples, got {samples}")));
    }
    Ok(())
}

/// Mean and standard error of `value(rng)` over sample indices `0..samples`,
/// where sample `k` draws from `seed.sample_rng(k)`.
fn mc_mean<E, S, F>(exec: &E, samples: u64, seed: SeedSpec, scratch: S, value: F) -> OverlapEstimate
where
    E: Executor + ?Sized,
    S: Fn() -> alloc::vec::Vec<f64> + Sync + Send,
    F: Fn(&mut SampleRng, &mut [f64]) -> f64 + Sync + Send,
{
    let moments = run_chunked(
        exec,
        samples,
        |range: Range<u64>| {
            let mut buf = scratch();
            let mut m = RunningMoments::new();
            for k in range {
                m.push(value(&mut seed.sample_rng(k), &mut buf));
            }
            m
        },
        RunningMoments::merge,
    )
    .unwrap_or_default();
    OverlapEstimate::from_moments(&moments, seed)
}

/// `E(N)`: expected overlap of two independent uniform states on `S^{N−1}`.
pub fn estimate_e<E: Executor + ?Sized>(dim: usize, samples: u64, seed: SeedSpec, exec: &E) -> Result<OverlapEstimate> {
    validate(dim, samples)?;
    Ok(mc_mean(exec, samples, seed, || vec![0.0; 2 * dim], |rng, buf| {
        let (m0, m1) = buf.split_at_mut(dim);
        fill_real_moduli_sq(rng, m0);
        fill_real_moduli_sq(rng, m1);
        dominance_overlap(m0, m1)
    }))
}

/// `E_c(N)`: the same for complex states, uniform on `S^{2N−1}`.
pub fn estimate_ec<E: Executor + ?Sized>(dim: usize, samples: u64, seed: SeedSpec, exec: &E) -> Result<OverlapEstimate> {
    validate(dim, samples)?;
    Ok(mc_mean(exec, samples, seed, || vec![0.0; 2 * dim], |rng, buf| {
        let (m0, m1) = buf.split_at_mut(dim);
        fill_complex_moduli_sq(rng, m0);
        fill_complex_moduli_sq(rng, m1);
        dominance_overlap(m0, m1)
    }))
}

/// `F(N)`: mean over pairs of uniform cube points of
/// `Σᵢ χ[|x₀ⁱ| < |x₁ⁱ|] (x₀ⁱ)² / ‖x₀‖₂²`.
pub fn estimate_f<E: Executor + ?Sized>(dim: usize, samples: u64, seed: SeedSpec, exec: &E) -> Result<OverlapEstimate> {
    validate(dim, samples)?;
    Ok(mc_mean(exec, samples, seed, || vec![0.0; 2 * dim], |rng, buf| {
        let (x0, x1) = buf.split_at_mut(dim);
        fill_cube(rng, x0);
        fill_cube(rng, x1);
        let norm_sq: f64 = x0.iter().map(|x| x * x).sum();
        if norm_sq == 0.0 {
            return 0.0;
        }
        let dominated: f64 = x0.iter().zip(x1.iter()).filter(|(a, b)| a.abs() < b.abs()).map(|(a, _)| a * a).sum();
        dominated / norm_sq
    }))
}

/// Weighted sums for the self-normalized ratio `Σ W o / Σ W`.
#[derive(Debug, Clone, Copy, Default)]
struct RatioSums {
    count: u64,
    w: f64,
    wo: f64,
    w2: f64,
    w2o: f64,
    w2o2: f64,
}

impl RatioSums {
    fn push(&mut self, weight: f64, value: f64) {
        let w2 = weight * weight;
        self.count += 1;
        self.w += weight;
        self.wo += weight * value;
        self.w2 += w2;
        self.w2o += w2 * value;
        self.w2o2 += w2 * value * value;
    }

    fn merge(self, o: Self) -> Self {
        Self {
            count: self.count + o.count,
            w: self.w + o.w,
            wo: self.wo + o.wo,
            w2: self.w2 + o.w2,
            w2o: self.w2o + o.w2o,
            w2o2: self.w2o2 + o.w2o2,
        }
    }
}

/// `E(N)` from uniform cube points: each point `x` is projected to `x/‖x‖₂`
/// and weighted by `(‖x‖∞/‖x‖₂)^N`, which turns the radial projection of
/// the cube measure into the uniform sphere measure. The estimate is the
/// self-normalized ratio `Σ w₀w₁·overlap / Σ w₀w₁`; its standard error
/// comes from the delta method.
///
/// Weight variance grows quickly with `N`; intended for `N ≤ 16`.
pub fn estimate_e_cube_weighted<E: Executor + ?Sized>(
    dim: usize,
    samples: u64,
    seed: SeedSpec,
    exec: &E,
) -> Result<OverlapEstimate> {
    validate(dim, samples)?;
    let sums = run_chunked(
        exec,
        samples,
        |range: Range<u64>| {
            let mut x0 = vec![0.0; dim];
            let mut x1 = vec![0.0; dim];
            let mut sums = RatioSums::default();
            for k in range {
                let mut rng = seed.sample_rng(k);
                fill_cube(&mut rng, &mut x0);
                fill_cube(&mut rng, &mut x1);
                let w0 = project_and_weight(&mut x0);
                let w1 = project_and_weight(&mut x1);
                sums.push(w0 * w1, dominance_overlap(&x0, &x1));
            }
            sums
        },
        RatioSums::merge,
    )
    .unwrap_or_default();
    if sums.w.is_nan() || sums.w <= 0.0 {
        return Err(Error::DegenerateWeights);
    }
    let mean = sums.wo / sums.w;
    let var = (sums.w2o2 - 2.0 * mean * sums.w2o + mean * mean * sums.w2) / (sums.w * sums.w);
    Ok(OverlapEstimate { mean, std_error: math::sqrt(var.max(0.0)), samples: sums.count, seed })
}

/// Replaces `x` by its squared moduli after projection to the sphere and
/// returns the weight `(‖x‖∞/‖x‖₂)^N`. Zero vectors get weight 0.
fn project_and_weight(x: &mut [f64]) -> f64 {
    let norm_sq: f64 = x.iter().map(|v| v * v).sum();
    if norm_sq == 0.0 {
        return 0.0;
    }
    let ratio = max_abs(x) / math::sqrt(norm_sq);
    x.iter_mut().for_each(|v| *v = *v * *v / norm_sq);
    math::powi(ratio, x.len() as i32)
}

/// Fraction of uniform sphere states with `‖ψ‖∞ ≥ (1 − ε)‖ψ‖₂`.
pub fn localized_fraction<E: Executor + ?Sized>(
    dim: usize,
    epsilon: f64,
    samples: u64,
    seed: SeedSpec,
    exec: &E,
) -> Result<OverlapEstimate> {
    validate(dim, samples)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("epsilon {epsilon} outside (0, 1)")));
    }
    Ok(mc_mean(exec, samples, seed, || vec![0.0; dim], |rng, g| {
        fill_normals(rng, g);
        let l2 = math::sqrt(g.iter().map(|v| v * v).sum());
        if max_abs(g) >= (1.0 - epsilon) * l2 {
            1.0
        } else {
            0.0
        }
    }))
}

//! Streaming moments, Monte Carlo estimates and log-linear fits.

use crate::error::{Error, Result};
use crate::math;
use crate::seed::SeedSpec;

/// Welford accumulator with the pairwise merge of Chan et al.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunningMoments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningMoments {
    pub const fn new() -> Self {
        Self { count: 0, mean: 0.0, m2: 0.0 }
    }

    pub fn push(&mut self, value: f64) {
        self.count += 1;
        let delta = value - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (value - self.mean);
    }

    #[must_use]
    pub fn accumulate(mut self, value: f64) -> Self {
        self.push(value);
        self
    }

    #[must_use]
    pub fn merge(self, other: Self) -> Self {
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other;
        }
        let count = self.count + other.count;
        let (na, nb, n) = (self.count as f64, other.count as f64, count as f64);
        let delta = other.mean - self.mean;
        Self {
            count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Sum of squared deviations from the mean.
    pub fn m2(&self) -> f64 {
        self.m2
    }

    /// Unbiased sample variance; 0 for fewer than two observations.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    /// `sqrt(M2 / (n (n - 1)))`
    pub fn standard_error(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            let n = self.count as f64;
            math::sqrt(self.m2 / (n * (n - 1.0)))
        }
    }
}

impl Extend<f64> for RunningMoments {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        iter.into_iter().for_each(|v| self.push(v));
    }
}

impl FromIterator<f64> for RunningMoments {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut m = Self::new();
        m.extend(iter);
        m
    }
}

/// Monte Carlo estimate of an overlap-type quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: SeedSpec,
}

impl OverlapEstimate {
    pub fn from_moments(moments: &RunningMoments, seed: SeedSpec) -> Self {
        Self { mean: moments.mean(), std_error: moments.standard_error(), samples: moments.count(), seed }
    }

    /// Number of standard errors between the estimate and `value`, using
    /// `extra_error` as an additional independent error term.
    pub fn z_score(&self, value: f64, extra_error: f64) -> f64 {
        let sigma = math::sqrt(self.std_error * self.std_error + extra_error * extra_error);
        (self.mean - value).abs() / sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Infinite when only two points were fitted.
    pub slope_std_error: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

/// Ordinary least squares of `ln(value)` on `n`.
///
/// The third tuple element (the value's error) is carried for callers that
/// filter points upstream; the fit itself is unweighted.
pub fn fit_log_linear(points: &[(f64, f64, f64)]) -> Result<FitResult> {
    if let Some((index, &(_, value, _))) =
        points.iter().enumerate().find(|(_, p)| !(p.1 > 0.0 && p.1.is_finite()))
    {
        return Err(Error::InvalidPoint { index, value });
    }
    if points.len() < 2 {
        return Err(Error::InsufficientData { usable: points.len() });
    }
    let k = points.len() as f64;
    let x_mean = points.iter().map(|p| p.0).sum::<f64>() / k;
    let y_mean = points.iter().map(|p| math::ln(p.1)).sum::<f64>() / k;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, v, _) in points {
        let dx = x - x_mean;
        let dy = math::ln(v) - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::InvalidParameter("all fit points share the same abscissa".into()));
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let sse = points
        .iter()
        .map(|&(x, v, _)| {
            let r = math::ln(v) - (intercept + slope * x);
            r * r
        })
        .sum::<f64>();
    let slope_std_error = if points.len() > 2 { math::sqrt(sse / (k - 2.0) / sxx) } else { f64::INFINITY };
    let r_squared = if syy == 0.0 { 0.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    Ok(FitResult { slope, intercept, slope_std_error, r_squared, points_used: points.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn single_observation() {
        let m = RunningMoments::new().accumulate(5.0);
        assert_eq!((m.count(), m.mean(), m.m2()), (1, 5.0, 0.0));
    }

    #[test]
    fn hand_arithmetic() {
        let m: RunningMoments = [1.0, 2.0, 3.0].into_iter().collect();
        assert_eq!(m.mean(), 2.0);
        assert_eq!(m.variance(), 1.0);
        assert!((m.standard_error() - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn empty_is_identity() {
        let x: RunningMoments = [0.25, 4.0, -1.5].into_iter().collect();
        assert_eq!(x.merge(RunningMoments::new()), x);
        assert_eq!(RunningMoments::new().merge(x), x);
    }

    fn uniform_stream(n: usize) -> Vec<f64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        (0..n).map(|_| rng.random::<f64>()).collect()
    }

    #[test]
    fn matches_two_pass_oracle() {
        let xs = uniform_stream(1_000_000);
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let m2 = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
        let m: RunningMoments = xs.iter().copied().collect();
        assert!(rel_close(m.mean(), mean, 1e-10));
        assert!(rel_close(m.m2(), m2, 1e-10));
    }

    #[test]
    fn eight_way_split_matches_sequential() {
        let xs = uniform_stream(200_003);
        let seq: RunningMoments = xs.iter().copied().collect();
        let merged = xs
            .chunks(xs.len().div_ceil(8))
            .map(|c| c.iter().copied().collect::<RunningMoments>())
            .fold(RunningMoments::new(), RunningMoments::merge);
        assert_eq!(merged.count(), seq.count());
        assert!(rel_close(merged.mean(), seq.mean(), 1e-10));
        assert!(rel_close(merged.m2(), seq.m2(), 1e-10));
    }

    proptest! {
        #[test]
        fn merge_is_split_invariant(xs in prop::collection::vec(-1e3f64..1e3, 2..200), cut in 0usize..200) {
            let cut = cut.min(xs.len());
            let whole: RunningMoments = xs.iter().copied().collect();
            let a: RunningMoments = xs[..cut].iter().copied().collect();
            let b: RunningMoments = xs[cut..].iter().copied().collect();
            let ab = a.merge(b);
            let ba = b.merge(a);
            prop_assert_eq!(ab.count(), whole.count());
            prop_assert!(rel_close(ab.mean(), ba.mean(), 1e-12));
            prop_assert!(rel_close(ab.m2(), ba.m2(), 1e-12));
            prop_assert!((ab.mean() - whole.mean()).abs() <= 1e-12 * 1e3);
            prop_assert!(rel_close(ab.m2(), whole.m2(), 1e-9) || (ab.m2() - whole.m2()).abs() < 1e-9);
        }

        #[test]
        fn fit_is_scale_invariant(
            values in prop::collection::vec(1e-6f64..1.0, 3..12),
            scale in 1e-3f64..1e3,
        ) {
            let pts: Vec<_> = values.iter().enumerate().map(|(i, &v)| (i as f64, v, 0.0)).collect();
            let scaled: Vec<_> = pts.iter().map(|&(n, v, e)| (n, v * scale, e)).collect();
            let a = fit_log_linear(&pts).unwrap();
            let b = fit_log_linear(&scaled).unwrap();
            prop_assert!((a.slope - b.slope).abs() <= 1e-12 * a.slope.abs().max(1.0));
            prop_assert!((a.r_squared - b.r_squared).abs() <= 1e-12);
            prop_assert!((b.intercept - a.intercept - scale.ln()).abs() <= 1e-9);
        }
    }

    #[test]
    fn exact_exponential() {
        let pts: Vec<_> = (1..=10).map(|n| (n as f64, 0.5f64.powi(n), 0.0)).collect();
        let fit = fit_log_linear(&pts).unwrap();
        assert!((fit.slope - 0.5f64.ln()).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert!(fit.intercept.abs() < 1e-12);
        assert!(fit.slope_std_error < 1e-12);
        assert_eq!(fit.points_used, 10);
    }

    #[test]
    fn flat_data() {
        let pts: Vec<_> = (1..=5).map(|n| (n as f64, 0.3, 0.0)).collect();
        let fit = fit_log_linear(&pts).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.r_squared, 0.0);
    }

    #[test]
    fn noisy_exponential_recovers_slope() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        let true_slope = -0.35;
        let pts: Vec<_> = (0..40)
            .map(|n| {
                let noise: f64 = rng.sample(rand_distr::StandardNormal);
                (n as f64, (1.2 + true_slope * n as f64 + 0.05 * noise).exp(), 0.0)
            })
            .collect();
        let fit = fit_log_linear(&pts).unwrap();
        assert!((fit.slope - true_slope).abs() < 3.0 * fit.slope_std_error, "{fit:?}");
        assert!(fit.r_squared > 0.99);
    }

    #[test]
    fn fit_errors() {
        assert_eq!(fit_log_linear(&[(1.0, 0.5, 0.0)]), Err(Error::InsufficientData { usable: 1 }));
        assert_eq!(
            fit_log_linear(&[(1.0, 0.5, 0.0), (2.0, 0.0, 0.0)]),
            Err(Error::InvalidPoint { index: 1, value: 0.0 })
        );
        assert!(fit_log_linear(&[(1.0, 0.5, 0.0), (1.0, 0.4, 0.0)]).is_err());
        let two = fit_log_linear(&[(1.0, 0.5, 0.0), (2.0, 0.25, 0.0)]).unwrap();
        assert!(two.slope_std_error.is_infinite());
    }
}

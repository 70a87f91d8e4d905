//! Tabulated one-dimensional wave-function factors and product states.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Tolerance on the trapezoidal norm `∫ f² dq` of a [`GridFunction`].
pub const GRID_NORM_TOLERANCE: f64 = 1e-8;

/// `|ψ(q)|` tabulated at the nodes `start + i * step`.
///
/// The trapezoidal integral of the squared values is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    start: f64,
    step: f64,
    values: Vec<f64>,
}

/// Trapezoidal `∫ f² dq` over a uniform grid.
pub fn trapezoid_norm_sq(step: f64, values: &[f64]) -> f64 {
    trapezoid(step, values.iter().map(|v| v * v))
}

fn trapezoid(step: f64, integrand: impl ExactSizeIterator<Item = f64>) -> f64 {
    let last = integrand.len().saturating_sub(1);
    let sum: f64 = integrand.enumerate().map(|(i, v)| if i == 0 || i == last { 0.5 * v } else { v }).sum();
    step * sum
}

impl GridFunction {
    /// Wraps a table that is already normalized.
    pub fn new(start: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        Self::validate(start, step, &values)?;
        let norm = trapezoid_norm_sq(step, &values);
        if (norm - 1.0).abs() > GRID_NORM_TOLERANCE {
            return Err(Error::InvalidGrid(alloc::format!(
                "trapezoidal norm {norm} differs from 1 by more than {GRID_NORM_TOLERANCE}"
            )));
        }
        Ok(Self { start, step, values })
    }

    /// Scales the table so that its trapezoidal norm is 1.
    pub fn normalized(start: f64, step: f64, mut values: Vec<f64>) -> Result<Self> {
        Self::validate(start, step, &values)?;
        let norm = trapezoid_norm_sq(step, &values);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidGrid("table has zero or non-finite norm".into()));
        }
        let scale = 1.0 / math::sqrt(norm);
        values.iter_mut().for_each(|v| *v *= scale);
        Ok(Self { start, step, values })
    }

    /// Tabulates `|f|` at `nodes` grid points and normalizes.
    pub fn from_fn(start: f64, step: f64, nodes: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..nodes).map(|i| f(start + i as f64 * step).abs()).collect();
        Self::normalized(start, step, values)
    }

    fn validate(start: f64, step: f64, values: &[f64]) -> Result<()> {
        if !(step > 0.0 && step.is_finite()) || !start.is_finite() {
            return Err(Error::InvalidGrid(alloc::format!("bad grid start {start} or step {step}")));
        }
        if values.len() < 2 {
            return Err(Error::InvalidGrid(alloc::format!("need at least 2 nodes, got {}", values.len())));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(**v >= 0.0 && v.is_finite())) {
            return Err(Error::InvalidGrid(alloc::format!("value {v} at node {i} is negative or not finite")));
        }
        Ok(())
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn node(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.node(self.len() - 1)
    }

    pub fn norm_sq(&self) -> f64 {
        trapezoid_norm_sq(self.step, &self.values)
    }

    /// True when both tables live on the same nodes.
    pub fn same_grid(&self, other: &Self) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
        self.len() == other.len() && close(self.start, other.start) && close(self.step, other.step)
    }

    /// Linear interpolation between nodes; zero outside the grid.
    pub fn value_at(&self, q: f64) -> f64 {
        let x = (q - self.start) / self.step;
        if x.is_nan() || x < 0.0 || x > (self.len() - 1) as f64 {
            return 0.0;
        }
        let i = (x as usize).min(self.len() - 2);
        let t = x - i as f64;
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }

    /// Index of the unique maximum. Nodes within a relative `1e-12` of the
    /// maximum count as ties.
    pub fn unique_argmax(&self) -> Option<usize> {
        let (best, max) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        let ties = self.values.iter().filter(|&&v| v >= max * (1.0 - 1e-12)).count();
        (ties == 1).then_some(best)
    }

    pub(crate) fn argmax_tie_count(&self) -> usize {
        let max = self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        self.values.iter().filter(|&&v| v >= max * (1.0 - 1e-12)).count()
    }
}

/// Inverse-CDF sampler for the density `f²` of a [`GridFunction`].
///
/// The cumulative trapezoid sums are interpolated linearly, so within each
/// cell the sampled density is constant.
#[derive(Debug, Clone)]
pub struct GridSampler {
    start: f64,
    step: f64,
    cdf: Vec<f64>,
}

impl GridSampler {
    pub fn new(f: &GridFunction) -> Self {
        let mut cdf = Vec::with_capacity(f.len());
        let mut acc = 0.0;
        cdf.push(0.0);
        for w in f.values.windows(2) {
            acc += 0.5 * f.step * (w[0] * w[0] + w[1] * w[1]);
            cdf.push(acc);
        }
        Self { start: f.start, step: f.step, cdf }
    }

    /// Maps `u ∈ [0, 1)` to a grid coordinate.
    pub fn sample(&self, u: f64) -> f64 {
        let total = *self.cdf.last().unwrap();
        let target = u * total;
        // first node whose cumulative mass exceeds the target
        let k = self.cdf.partition_point(|&c| c <= target).clamp(1, self.cdf.len() - 1);
        let (lo, hi) = (self.cdf[k - 1], self.cdf[k]);
        let t = if hi > lo { ((target - lo) / (hi - lo)).clamp(0.0, 1.0) } else { 0.0 };
        self.start + ((k - 1) as f64 + t) * self.step
    }
}

/// `ψ(q) = ∏ᵢ ψᵢ(qᵢ)` over independent one-dimensional subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    factors: Vec<GridFunction>,
}

impl ProductState {
    pub fn new(factors: Vec<GridFunction>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter("product state needs at least one factor".into()));
        }
        Ok(Self { factors })
    }

    /// `n` copies of the same factor.
    pub fn repeated(factor: &GridFunction, n: usize) -> Result<Self> {
        Self::new(alloc::vec![factor.clone(); n])
    }

    pub fn factors(&self) -> &[GridFunction] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Product state whose factors take only the values 0 and a constant; each
/// entry is the normalized support fraction of one subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryState {
    fractions: Vec<f64>,
}

impl BinaryState {
    pub fn new(fractions: Vec<f64>) -> Result<Self> {
        if let Some(p) = fractions.iter().find(|p| !(**p > 0.0 && **p <= 1.0)) {
            return Err(Error::InvalidParameter(alloc::format!("support fraction {p} outside (0, 1]")));
        }
        Ok(Self { fractions })
    }

    pub fn fractions(&self) -> &[f64] {
        &self.fractions
    }

    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(mean: f64) -> GridFunction {
        GridFunction::from_fn(-8.0, 0.01, 1801, |q| math::sqrt(math::normal_pdf(q, mean))).unwrap()
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(GridFunction::new(0.0, 0.0, vec![1.0, 1.0]).is_err());
        assert!(GridFunction::new(0.0, 1.0, vec![1.0]).is_err());
        assert!(GridFunction::new(0.0, 1.0, vec![1.0, -1.0]).is_err());
        assert!(GridFunction::new(0.0, 1.0, vec![1.0, 2.0]).is_err());
        assert!(GridFunction::normalized(0.0, 1.0, vec![0.0, 0.0]).is_err());
        assert!(GridFunction::new(0.0, 1.0, vec![1.0, 1.0]).is_ok());
    }

    #[test]
    fn normalization() {
        let f = GridFunction::normalized(0.0, 0.5, vec![1.0, 2.0, 3.0, 0.5]).unwrap();
        assert!((f.norm_sq() - 1.0).abs() < 1e-14);
        assert!((gaussian(0.0).norm_sq() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn interpolation() {
        let f = GridFunction::normalized(1.0, 0.5, vec![0.0, 2.0, 2.0, 0.0]).unwrap();
        let top = f.values()[1];
        assert_eq!(f.value_at(1.0), 0.0);
        assert!((f.value_at(1.25) - 0.5 * top).abs() < 1e-15);
        assert_eq!(f.value_at(1.75), top);
        assert_eq!(f.value_at(0.99), 0.0);
        assert_eq!(f.value_at(2.6), 0.0);
        assert_eq!(f.value_at(2.5), 0.0);
    }

    #[test]
    fn argmax() {
        assert_eq!(gaussian(0.0).unique_argmax(), Some(800));
        let flat = GridFunction::normalized(0.0, 1.0, vec![1.0, 1.0, 0.5]).unwrap();
        assert_eq!(flat.unique_argmax(), None);
        assert_eq!(flat.argmax_tie_count(), 2);
    }

    #[test]
    fn sampler_reproduces_cell_masses() {
        let f = GridFunction::normalized(0.0, 1.0, vec![1.0, 1.0, 0.0, 0.0, 2.0]).unwrap();
        let s = GridSampler::new(&f);
        // masses per cell: 1, 1/2, 0, 2 (before normalization)
        let total = 3.5;
        assert_eq!(s.sample(0.0), 0.0);
        assert!((s.sample(0.5 / total) - 0.5).abs() < 1e-12);
        assert!((s.sample(1.25 / total) - 1.5).abs() < 1e-12);
        let q = s.sample(1.6 / total);
        assert!((3.0..4.0).contains(&q), "empty cell skipped, got {q}");
        assert!(s.sample(1.0 - 1e-16) <= 4.0);
    }

    #[test]
    fn sampler_matches_gaussian_quantiles() {
        let s = GridSampler::new(&gaussian(0.0));
        for (u, z) in [(0.5, 0.0), (0.841_344_746_068_542_9, 1.0), (0.022_750_131_948_179_2, -2.0)] {
            assert!((s.sample(u) - z).abs() < 1e-3, "u={u}");
        }
    }

    #[test]
    fn binary_state_range() {
        assert!(BinaryState::new(vec![0.5, 1.0]).is_ok());
        assert!(BinaryState::new(vec![0.0]).is_err());
        assert!(BinaryState::new(vec![1.5]).is_err());
        assert!(ProductState::new(vec![]).is_err());
    }
}

//! Overlap of `n`-fold product states as `n` grows.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::{ExperimentResult, ExperimentRow};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::grid::{GridFunction, ProductState};
use crate::math;
use crate::overlap::{overlap_grid, overlap_product_mc};
use crate::seed::SeedSpec;
use crate::stats::{fit_log_linear, FitResult};

/// Rows enter the decay fit only when `mean > DECAY_FIT_THRESHOLD · stderr`.
pub const DECAY_FIT_THRESHOLD: f64 = 10.0;

/// Amplitudes `sqrt` of the `N(0, 1)` and `N(distance, 1)` densities on
/// `[−8, 8 + distance]` with step `0.001`.
///
/// For this pair the dominance condition of the `n`-fold product reduces to
/// `Σ qᵢ > n·distance/2`, so the overlap is `Φ(−distance·√n / 2)`.
pub fn displaced_gaussian_pair(distance: f64) -> Result<(GridFunction, GridFunction)> {
    if !(0.0..=100.0).contains(&distance) {
        return Err(Error::InvalidParameter(alloc::format!("distance {distance} outside [0, 100]")));
    }
    let step = 0.001;
    let nodes = libm::round((16.0 + distance) / step) as usize + 1;
    let amp = |mean: f64| move |q: f64| math::sqrt(math::normal_pdf(q, mean));
    Ok((
        GridFunction::from_fn(-8.0, step, nodes, amp(0.0))?,
        GridFunction::from_fn(-8.0, step, nodes, amp(distance))?,
    ))
}

/// Estimates `ρ(ψ₀^{⊗n}|ψ₁^{⊗n})` for `n = 1..=n_max` and fits
/// `ln(overlap)` against `n`.
///
/// Row `n` uses `seed.substream(n)`. The fit is `None` when fewer than two
/// rows clear the signal threshold (e.g. for identical factors, whose
/// overlap vanishes); [`decay_fit`] reports that case as an error.
pub fn product_decay<E: Executor + ?Sized>(
    f0: &GridFunction,
    f1: &GridFunction,
    n_max: usize,
    samples: u64,
    seed: SeedSpec,
    exec: &E,
) -> Result<ExperimentResult> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(alloc::format!("n_max must be at least 2, got {n_max}")));
    }
    let factor_overlap = overlap_grid(f0, f1)?;
    let rows = (1..=n_max)
        .map(|n| {
            let p0 = ProductState::repeated(f0, n)?;
            let p1 = ProductState::repeated(f1, n)?;
            let est = overlap_product_mc(&p0, &p1, samples, seed.substream(n as u64), exec)?;
            Ok(ExperimentRow { parameter: n as u64, estimate: Some(est), analytic_ref: None, bound: None })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut result = ExperimentResult::new("product-decay", rows);
    result.fit = match decay_fit(&result.rows) {
        Ok(fit) => Some(fit),
        Err(Error::InsufficientSignal { .. }) => None,
        Err(e) => return Err(e),
    };
    result.summary.insert("factor_overlap".to_string(), factor_overlap);
    Ok(result)
}

/// Log-linear fit over the rows whose mean exceeds the signal threshold.
pub fn decay_fit(rows: &[ExperimentRow]) -> Result<FitResult> {
    let points: Vec<(f64, f64, f64)> = rows
        .iter()
        .filter_map(|r| r.estimate.map(|e| (r.parameter as f64, e)))
        .filter(|(_, e)| e.mean > DECAY_FIT_THRESHOLD * e.std_error && e.mean > 0.0)
        .map(|(n, e)| (n, e.mean, e.std_error))
        .collect();
    if points.len() < 2 {
        return Err(Error::InsufficientSignal { threshold: DECAY_FIT_THRESHOLD });
    }
    fit_log_linear(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;

    #[test]
    fn identical_factors_never_overlap() {
        let (f, _) = displaced_gaussian_pair(2.0).unwrap();
        let r = product_decay(&f, &f, 4, 2000, SeedSpec::new(3, 0), &Sequential).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert!(r.rows.iter().all(|row| row.estimate.unwrap().mean == 0.0));
        assert!(r.fit.is_none());
        assert_eq!(decay_fit(&r.rows), Err(Error::InsufficientSignal { threshold: 10.0 }));
    }

    #[test]
    fn rejects_single_system() {
        let (f0, f1) = displaced_gaussian_pair(2.0).unwrap();
        assert!(product_decay(&f0, &f1, 1, 100, SeedSpec::default(), &Sequential).is_err());
    }

    #[test]
    fn pair_grid_matches_reference_layout() {
        let (f0, f1) = displaced_gaussian_pair(2.0).unwrap();
        assert_eq!(f0.len(), 18_001);
        assert!(f0.same_grid(&f1));
        assert!((f1.end() - 10.0).abs() < 1e-9);
    }
}

//! Parameter sweeps over the dimension `N`.
//!
//! Row `N` of every sweep draws from `seed.substream(N)`, so a row does not
//! depend on which other dimensions are in the list.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::{normalize_dims, ExperimentResult, ExperimentRow, Series};
use super::{estimate_e, estimate_e_cube_weighted, estimate_ec, estimate_f, localized_fraction, theorem_bound, E2_EXACT};
use crate::error::Result;
use crate::exec::Executor;
use crate::sampler::StateKind;
use crate::seed::SeedSpec;
use crate::stats::OverlapEstimate;

fn sweep<F>(dims: &[usize], seed: SeedSpec, mut row: F) -> Result<Vec<ExperimentRow>>
where
    F: FnMut(usize, SeedSpec) -> Result<ExperimentRow>,
{
    normalize_dims(dims)?.into_iter().map(|n| row(n, seed.substream(n as u64))).collect()
}

fn est_row(dim: usize, est: OverlapEstimate, analytic_ref: Option<f64>, bound: Option<f64>) -> ExperimentRow {
    ExperimentRow { parameter: dim as u64, estimate: Some(est), analytic_ref, bound }
}

fn optimal_bound(dim: usize, kind: StateKind) -> Result<f64> {
    Ok(theorem_bound(dim, 0.5, kind)?.optimal_bound)
}

fn f_rows<E: Executor + ?Sized>(dims: &[usize], samples: u64, seed: SeedSpec, exec: &E) -> Result<Vec<ExperimentRow>> {
    sweep(dims, seed, |n, s| {
        Ok(est_row(n, estimate_f(n, samples, s, exec)?, (n == 1).then_some(0.5), None))
    })
}

/// `E(N)` with the optimized real bound, plus `F(N)` as a companion series.
pub fn figure1<E: Executor + ?Sized>(dims: &[usize], samples: u64, seed: SeedSpec, exec: &E) -> Result<ExperimentResult> {
    let rows = sweep(dims, seed, |n, s| {
        Ok(est_row(n, estimate_e(n, samples, s, exec)?, (n == 2).then_some(E2_EXACT), Some(optimal_bound(n, StateKind::Real)?)))
    })?;
    let mut result = ExperimentResult::new("figure1", rows);
    result
        .companions
        .push(Series { name: "integral-f".to_string(), rows: f_rows(dims, samples, seed.substream(u64::MAX), exec)? });
    Ok(result)
}

/// `E_c(N)` with the optimized complex bound.
pub fn ec_curve<E: Executor + ?Sized>(dims: &[usize], samples: u64, seed: SeedSpec, exec: &E) -> Result<ExperimentResult> {
    let rows = sweep(dims, seed, |n, s| {
        Ok(est_row(n, estimate_ec(n, samples, s, exec)?, None, Some(optimal_bound(n, StateKind::Complex)?)))
    })?;
    Ok(ExperimentResult::new("ec-curve", rows))
}

pub fn integral_f<E: Executor + ?Sized>(dims: &[usize], samples: u64, seed: SeedSpec, exec: &E) -> Result<ExperimentResult> {
    Ok(ExperimentResult::new("integral-f", f_rows(dims, samples, seed, exec)?))
}

/// Cube-reweighted `E(N)` next to the direct sphere estimate. The sphere
/// series draws from `seed.substream(u64::MAX)`, independent of the rows.
pub fn cube_check<E: Executor + ?Sized>(dims: &[usize], samples: u64, seed: SeedSpec, exec: &E) -> Result<ExperimentResult> {
    let rows = sweep(dims, seed, |n, s| {
        Ok(est_row(n, estimate_e_cube_weighted(n, samples, s, exec)?, (n == 2).then_some(E2_EXACT), None))
    })?;
    let sphere = sweep(dims, seed.substream(u64::MAX), |n, s| {
        Ok(est_row(n, estimate_e(n, samples, s, exec)?, (n == 2).then_some(E2_EXACT), None))
    })?;
    let mut result = ExperimentResult::new("cube-check", rows);
    result.companions.push(Series { name: "sphere".to_string(), rows: sphere });
    Ok(result)
}

pub fn localized_curve<E: Executor + ?Sized>(
    dims: &[usize],
    epsilon: f64,
    samples: u64,
    seed: SeedSpec,
    exec: &E,
) -> Result<ExperimentResult> {
    let rows = sweep(dims, seed, |n, s| {
        Ok(est_row(n, localized_fraction(n, epsilon, samples, s, exec)?, (n == 1).then_some(1.0), None))
    })?;
    let mut result = ExperimentResult::new("localized", rows);
    result.summary.insert("epsilon".to_string(), epsilon);
    Ok(result)
}

/// Bound at the given `ε` (reported as `analytic_ref`) and optimized over
/// the `ε` grid (reported as `bound`). No Monte Carlo estimate.
pub fn bound_table(dims: &[usize], epsilon: f64, kind: StateKind) -> Result<(ExperimentResult, Vec<super::BoundReport>)> {
    let reports = normalize_dims(dims)?
        .into_iter()
        .map(|n| theorem_bound(n, epsilon, kind))
        .collect::<Result<Vec<_>>>()?;
    let rows = reports
        .iter()
        .map(|r| ExperimentRow { parameter: r.dim as u64, estimate: None, analytic_ref: Some(r.bound), bound: Some(r.optimal_bound) })
        .collect();
    let mut result = ExperimentResult::new("bound", rows);
    result.summary.insert("epsilon".to_string(), epsilon);
    Ok((result, reports))
}

//! Experiment drivers built from the sampling, overlap and statistics
//! primitives.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::stats::{FitResult, OverlapEstimate};

mod bound;
mod counterexample;
mod estimators;
mod product;

pub use bound::{epsilon_grid, theorem_bound, BoundReport, EPSILON_GRID_POINTS};
pub use counterexample::{counterexample_mc, counterexample_overlap, UNIVERSAL_OVERLAP};
pub use estimators::{
    estimate_e, estimate_e_cube_weighted, estimate_ec, estimate_f, localized_fraction, E2_EXACT,
};
pub use product::{decay_fit, displaced_gaussian_pair, product_decay, DECAY_FIT_THRESHOLD};

mod curves;
pub use curves::{bound_table, cube_check, ec_curve, figure1, integral_f, localized_curve};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    /// Dimension `N` or system count `n`.
    pub parameter: u64,
    pub estimate: Option<OverlapEstimate>,
    pub analytic_ref: Option<f64>,
    pub bound: Option<f64>,
}

/// A named curve evaluated alongside the main rows, e.g. `F(N)` next to
/// `E(N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub rows: Vec<ExperimentRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub name: String,
    /// Sorted by parameter.
    pub rows: Vec<ExperimentRow>,
    pub companions: Vec<Series>,
    pub fit: Option<FitResult>,
    /// Scalar outputs that do not belong to a row.
    pub summary: BTreeMap<String, f64>,
}

impl ExperimentResult {
    pub fn new(name: &str, mut rows: Vec<ExperimentRow>) -> Self {
        rows.sort_by_key(|r| r.parameter);
        Self { name: name.into(), rows, companions: Vec::new(), fit: None, summary: BTreeMap::new() }
    }

    pub fn row(&self, parameter: u64) -> Option<&ExperimentRow> {
        self.rows.iter().find(|r| r.parameter == parameter)
    }
}

/// Sorted, deduplicated parameter list; rejects empty lists and zeros.
pub fn normalize_dims(dims: &[usize]) -> crate::Result<Vec<usize>> {
    if dims.is_empty() {
        return Err(crate::Error::InvalidParameter("dimension list is empty".into()));
    }
    if dims.contains(&0) {
        return Err(crate::Error::InvalidDimension(0));
    }
    let mut d = dims.to_vec();
    d.sort_unstable();
    d.dedup();
    Ok(d)
}

//! CSV and JSON serializers for experiment results.

use std::io::Write;

use pilot_overlap_core::experiments::{ExperimentResult, ExperimentRow};
use pilot_overlap_core::FitResult;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;

pub const CSV_HEADER: &str = "parameter,mean,stderr,samples,analytic_ref,bound";

/// 17 significant digits, '.' as decimal separator.
fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

pub fn write_csv(result: &ExperimentResult, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in &result.rows {
        let est = row.estimate.as_ref();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            row.parameter,
            opt(est.map(|e| e.mean)),
            opt(est.map(|e| e.std_error)),
            est.map(|e| e.samples.to_string()).unwrap_or_default(),
            opt(row.analytic_ref),
            opt(row.bound),
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct RowJson {
    parameter: u64,
    mean: Option<f64>,
    stderr: Option<f64>,
    samples: Option<u64>,
    seed_master: Option<u64>,
    seed_stream: Option<u64>,
    analytic_ref: Option<f64>,
    bound: Option<f64>,
}

fn rows_json(rows: &[ExperimentRow]) -> Value {
    let rows: Vec<RowJson> = rows
        .iter()
        .map(|r| RowJson {
            parameter: r.parameter,
            mean: r.estimate.map(|e| e.mean),
            stderr: r.estimate.map(|e| e.std_error),
            samples: r.estimate.map(|e| e.samples),
            seed_master: r.estimate.map(|e| e.seed.master),
            seed_stream: r.estimate.map(|e| e.seed.stream),
            analytic_ref: r.analytic_ref,
            bound: r.bound,
        })
        .collect();
    serde_json::to_value(rows).expect("rows serialize")
}

fn fit_json(fit: &FitResult) -> Value {
    json!({
        "slope": fit.slope,
        "intercept": fit.intercept,
        "slope_stderr": fit.slope_std_error,
        "r_squared": fit.r_squared,
        "points_used": fit.points_used,
    })
}

/// The JSON summary. `wall_time_seconds` is the only field that varies
/// between identical runs.
pub fn summary_json(
    config: &RunConfig,
    result: &ExperimentResult,
    version: &str,
    wall_time_seconds: f64,
    extra: Map<String, Value>,
) -> Value {
    let companions: Map<String, Value> =
        result.companions.iter().map(|s| (s.name.clone(), rows_json(&s.rows))).collect();
    json!({
        "experiment": result.name,
        "version": version,
        "config": config,
        "wall_time_seconds": wall_time_seconds,
        "rows": rows_json(&result.rows),
        "companions": companions,
        "fit": result.fit.as_ref().map(fit_json),
        "summary": result.summary,
        "extra": extra,
    })
}

//! Experiment dispatch and artifact writing.

use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use pilot_overlap_core::experiments::{
    self, BoundReport, ExperimentResult, ExperimentRow, Series, UNIVERSAL_OVERLAP,
};
use pilot_overlap_core::overlap::{maxima_distance, overlap_grid, overlap_product_mc, ridge_value};
use pilot_overlap_core::{math, GridFunction, ProductState, SeedSpec, StateKind};
use serde_json::{json, Map, Value};

use crate::config::{Experiment, OutputFormat, RunConfig, COUNTEREXAMPLE_EXTENT, COUNTEREXAMPLE_STEP, DECAY_DISTANCE};
use crate::gridfile::{parse_grid_file, GridFileError};
use crate::output::{summary_json, write_csv};
use crate::parallel::Parallel;
use crate::{svg, version_string};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Invalid(#[from] pilot_overlap_core::Error),
    #[error("grid file {path}: {source}")]
    GridFile { path: String, source: GridFileError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl RunError {
    /// 2 for usage and validation problems, 1 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } => 1,
            _ => 2,
        }
    }
}

#[derive(Debug)]
pub struct RunReport {
    pub result: ExperimentResult,
    pub summary: Value,
    pub files: Vec<PathBuf>,
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> RunError + '_ {
    move |source| RunError::Io { path: path.display().to_string(), source }
}

fn load_grid(path: &Path) -> Result<GridFunction, RunError> {
    parse_grid_file(path).map_err(|source| match source {
        GridFileError::Io { path, source } => RunError::Io { path, source },
        source => RunError::GridFile { path: path.display().to_string(), source },
    })
}

fn grid_pair(config: &RunConfig) -> Result<Option<(GridFunction, GridFunction)>, RunError> {
    match (&config.grid0, &config.grid1) {
        (Some(a), Some(b)) => Ok(Some((load_grid(a)?, load_grid(b)?))),
        (None, None) => Ok(None),
        _ => Err(RunError::Usage("--grid0 and --grid1 must be given together".into())),
    }
}

fn epsilon(config: &RunConfig) -> Result<f64, RunError> {
    config
        .epsilon
        .ok_or_else(|| RunError::Usage(format!("--epsilon is required for {}", config.experiment.name())))
}

fn bound_json(reports: &[BoundReport]) -> Value {
    reports
        .iter()
        .map(|r| {
            json!({
                "dim": r.dim,
                "epsilon": r.epsilon,
                "bound": r.bound,
                "optimal_epsilon": r.optimal_epsilon,
                "optimal_bound": r.optimal_bound,
            })
        })
        .collect()
}

fn product_decay(config: &RunConfig, seed: SeedSpec, exec: &Parallel) -> Result<ExperimentResult, RunError> {
    let n_max = config.dims.iter().copied().max().unwrap_or(0);
    let (pair, reference) = match grid_pair(config)? {
        Some(pair) => (pair, None),
        None => (experiments::displaced_gaussian_pair(DECAY_DISTANCE)?, Some(DECAY_DISTANCE)),
    };
    let mut result = experiments::product_decay(&pair.0, &pair.1, n_max, config.samples, seed, exec)?;
    if let Some(d) = reference {
        for row in &mut result.rows {
            row.analytic_ref = Some(math::normal_cdf(-d * (row.parameter as f64).sqrt() / 2.0));
        }
    }
    Ok(result)
}

fn overlap_pair(config: &RunConfig, seed: SeedSpec, exec: &Parallel) -> Result<ExperimentResult, RunError> {
    let (f0, f1) = grid_pair(config)?.ok_or_else(|| RunError::Usage("overlap needs --grid0 and --grid1".into()))?;
    let counts = if config.dims.is_empty() { vec![1] } else { experiments::normalize_dims(&config.dims)? };
    let single = overlap_grid(&f0, &f1)?;
    let rows = counts
        .iter()
        .map(|&n| {
            let p0 = ProductState::repeated(&f0, n)?;
            let p1 = ProductState::repeated(&f1, n)?;
            let est = overlap_product_mc(&p0, &p1, config.samples, seed.substream(n as u64), exec)?;
            Ok(ExperimentRow { parameter: n as u64, estimate: Some(est), analytic_ref: (n == 1).then_some(single), bound: None })
        })
        .collect::<Result<Vec<_>, pilot_overlap_core::Error>>()?;
    let mut result = ExperimentResult::new("overlap", rows);
    result.summary.insert("overlap_grid".into(), single);
    result.summary.insert("reverse_overlap_grid".into(), overlap_grid(&f1, &f0)?);
    let one = |f: &GridFunction| ProductState::repeated(f, 1);
    if let Ok(d) = maxima_distance(&one(&f0)?, &one(&f1)?) {
        result.summary.insert("maxima_distance".into(), d.total);
    }
    if let Ok(r) = ridge_value(&f0, &f1, 1) {
        result.summary.insert("ridge_crossing".into(), r.crossing);
        result.summary.insert("ridge_value".into(), r.crossing_value);
    }
    Ok(result)
}

fn execute(config: &RunConfig, exec: &Parallel, extra: &mut Map<String, Value>) -> Result<ExperimentResult, RunError> {
    let seed = SeedSpec::new(config.seed, 0);
    let (dims, samples) = (&config.dims, config.samples);
    Ok(match config.experiment {
        Experiment::Figure1 => experiments::figure1(dims, samples, seed, exec)?,
        Experiment::EcCurve => experiments::ec_curve(dims, samples, seed, exec)?,
        Experiment::IntegralF => experiments::integral_f(dims, samples, seed, exec)?,
        Experiment::CubeCheck => experiments::cube_check(dims, samples, seed, exec)?,
        Experiment::Localized => experiments::localized_curve(dims, epsilon(config)?, samples, seed, exec)?,
        Experiment::Bound => {
            let eps = epsilon(config)?;
            let (mut result, real) = experiments::bound_table(dims, eps, StateKind::Real)?;
            let (complex, reports) = experiments::bound_table(dims, eps, StateKind::Complex)?;
            result.companions.push(Series { name: "complex".into(), rows: complex.rows });
            extra.insert("real".into(), bound_json(&real));
            extra.insert("complex".into(), bound_json(&reports));
            result
        }
        Experiment::Counterexample => {
            let value = experiments::counterexample_overlap(COUNTEREXAMPLE_STEP, COUNTEREXAMPLE_EXTENT)?;
            let est = experiments::counterexample_mc(samples, seed, exec)?;
            let row = ExperimentRow { parameter: 2, estimate: Some(est), analytic_ref: Some(UNIVERSAL_OVERLAP), bound: None };
            let mut result = ExperimentResult::new("counterexample", vec![row]);
            result.summary.insert("quadrature_value".into(), value);
            result.summary.insert("quadrature_step".into(), COUNTEREXAMPLE_STEP);
            result.summary.insert("quadrature_extent".into(), COUNTEREXAMPLE_EXTENT);
            result
        }
        Experiment::ProductDecay => product_decay(config, seed, exec)?,
        Experiment::Overlap => overlap_pair(config, seed, exec)?,
    })
}

fn write_file(path: &Path, write: impl FnOnce(&mut BufWriter<fs::File>) -> std::io::Result<()>) -> Result<(), RunError> {
    let file = fs::File::create(path).map_err(io_error(path))?;
    let mut out = BufWriter::new(file);
    write(&mut out).and_then(|_| std::io::Write::flush(&mut out)).map_err(io_error(path))
}

/// Runs the configured experiment and writes
/// `<out>/<experiment>.{csv,json,svg}` for the selected formats.
pub fn run(config: &RunConfig) -> Result<RunReport, RunError> {
    if config.workers == 0 {
        return Err(RunError::Usage("--workers must be positive".into()));
    }
    if config.format.is_empty() {
        return Err(RunError::Usage("--format needs at least one of csv, json, svg".into()));
    }
    let exec = Parallel::new(config.workers).map_err(|e| RunError::Usage(format!("thread pool: {e}")))?;
    let started = Instant::now();
    let mut extra = Map::new();
    let result = execute(config, &exec, &mut extra)?;
    let wall = started.elapsed().as_secs_f64();
    let summary = summary_json(config, &result, &version_string(), wall, extra);

    fs::create_dir_all(&config.out).map_err(io_error(&config.out))?;
    let name = config.experiment.name();
    let mut files = Vec::new();
    for &format in &config.format {
        let ext = match format {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Svg => "svg",
        };
        let path = config.out.join(format!("{name}.{ext}"));
        match format {
            OutputFormat::Csv => write_file(&path, |out| write_csv(&result, out))?,
            OutputFormat::Json => write_file(&path, |out| {
                serde_json::to_writer_pretty(&mut *out, &summary)?;
                std::io::Write::write_all(out, b"\n")
            })?,
            OutputFormat::Svg => {
                let log_y = config.experiment == Experiment::ProductDecay;
                write_file(&path, |out| std::io::Write::write_all(out, svg::render(&result, log_y).as_bytes()))?
            }
        }
        files.push(path);
    }
    Ok(RunReport { result, summary, files })
}

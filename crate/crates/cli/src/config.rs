use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// E(N) for real random states, with the optimized bound and F(N)
    Figure1,
    /// E_c(N) for complex random states, with the optimized bound
    EcCurve,
    /// The cube integral F(N)
    IntegralF,
    /// Cube-reweighted E(N) next to direct sphere sampling
    CubeCheck,
    /// Fraction of states with ‖ψ‖∞ ≥ (1−ε)‖ψ‖₂
    Localized,
    /// Closed-form bound at ε and optimized over ε
    Bound,
    /// Overlap of orthogonal one-particle states over two field modes
    Counterexample,
    /// Overlap of n-fold product states for n = 1..n_max
    ProductDecay,
    /// Overlap of two tabulated factors given by --grid0/--grid1
    Overlap,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Self::Figure1 => "figure1",
            Self::EcCurve => "ec-curve",
            Self::IntegralF => "integral-f",
            Self::CubeCheck => "cube-check",
            Self::Localized => "localized",
            Self::Bound => "bound",
            Self::Counterexample => "counterexample",
            Self::ProductDecay => "product-decay",
            Self::Overlap => "overlap",
        }
    }

    fn default_dims(self) -> Vec<usize> {
        let powers = |lo: u32, hi: u32| (lo..=hi).map(|k| 1usize << k).collect();
        match self {
            Self::Figure1 | Self::EcCurve | Self::Localized => powers(1, 10),
            Self::IntegralF => powers(0, 10),
            Self::CubeCheck => (2..=8).collect(),
            Self::Bound => powers(1, 12),
            Self::ProductDecay => vec![8],
            Self::Counterexample | Self::Overlap => Vec::new(),
        }
    }

    fn default_epsilon(self) -> Option<f64> {
        match self {
            Self::Localized => Some(0.5),
            Self::Bound => Some(0.1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const COUNTEREXAMPLE_STEP: f64 = 0.005;
pub const COUNTEREXAMPLE_EXTENT: f64 = 10.0;
pub const DECAY_DISTANCE: f64 = 2.0;

/// Reproducible Monte Carlo experiments on wave-function overlaps.
#[derive(Debug, Clone, Parser)]
#[command(name = "pilot-overlap", version, about)]
pub struct Cli {
    #[arg(long, value_enum)]
    pub experiment: Experiment,
    /// Comma-separated dimensions (or, for product-decay, system counts; the
    /// largest entry is n_max)
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    /// Monte Carlo samples per row
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// ε for the localized and bound experiments
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Comma-separated outputs to write
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [OutputFormat::Csv, OutputFormat::Json])]
    pub format: Vec<OutputFormat>,
    /// Output directory; files are named after the experiment
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
    /// Grid table for the first factor (product-decay, overlap)
    #[arg(long)]
    pub grid0: Option<PathBuf>,
    /// Grid table for the second factor (product-decay, overlap)
    #[arg(long)]
    pub grid1: Option<PathBuf>,
    /// Worker threads; does not affect any numeric output
    #[arg(long)]
    pub workers: Option<usize>,
}

/// Effective configuration with every default filled in; echoed into the
/// JSON summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub dims: Vec<usize>,
    pub samples: u64,
    pub seed: u64,
    pub epsilon: Option<f64>,
    pub format: Vec<OutputFormat>,
    pub out: PathBuf,
    pub grid0: Option<PathBuf>,
    pub grid1: Option<PathBuf>,
    pub workers: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_extent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decay_distance: Option<f64>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Self {
        let experiment = cli.experiment;
        let mut format = cli.format;
        format.sort();
        format.dedup();
        let counterexample = experiment == Experiment::Counterexample;
        let default_pair = experiment == Experiment::ProductDecay && cli.grid0.is_none() && cli.grid1.is_none();
        Self {
            experiment,
            dims: cli.dims.unwrap_or_else(|| experiment.default_dims()),
            samples: cli.samples.unwrap_or(DEFAULT_SAMPLES),
            seed: cli.seed,
            epsilon: cli.epsilon.or(experiment.default_epsilon()),
            format,
            out: cli.out,
            grid0: cli.grid0,
            grid1: cli.grid1,
            workers: cli
                .workers
                .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
            quadrature_step: counterexample.then_some(COUNTEREXAMPLE_STEP),
            quadrature_extent: counterexample.then_some(COUNTEREXAMPLE_EXTENT),
            decay_distance: default_pair.then_some(DECAY_DISTANCE),
        }
    }

    pub fn wants(&self, format: OutputFormat) -> bool {
        self.format.contains(&format)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("pilot-overlap").chain(args.iter().copied()))
    }

    #[test]
    fn defaults_are_filled() {
        let cfg = RunConfig::from_cli(parse(&["--experiment", "figure1"]).unwrap());
        assert_eq!(cfg.dims, [2, 4, 8, 16, 32, 64, 128, 256, 512, 1024]);
        assert_eq!(cfg.samples, DEFAULT_SAMPLES);
        assert_eq!(cfg.format, [OutputFormat::Csv, OutputFormat::Json]);
        assert!(cfg.workers >= 1);
        let b = RunConfig::from_cli(parse(&["--experiment", "bound"]).unwrap());
        assert_eq!(b.epsilon, Some(0.1));
        assert_eq!(*b.dims.last().unwrap(), 4096);
    }

    #[test]
    fn explicit_flags() {
        let cli = parse(&[
            "--experiment", "product-decay", "--dims", "2,6", "--samples", "500", "--seed", "9",
            "--format", "svg,csv", "--out", "/tmp/x", "--workers", "3",
        ])
        .unwrap();
        let cfg = RunConfig::from_cli(cli);
        assert_eq!(cfg.dims, [2, 6]);
        assert_eq!((cfg.samples, cfg.seed, cfg.workers), (500, 9, 3));
        assert_eq!(cfg.format, [OutputFormat::Csv, OutputFormat::Svg]);
        assert_eq!(cfg.decay_distance, Some(2.0));
    }

    #[test]
    fn unknown_experiment_is_a_usage_error() {
        let err = parse(&["--experiment", "nope"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}

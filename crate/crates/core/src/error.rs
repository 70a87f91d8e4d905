use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("incompatible states: {0}")]
    IncompatibleStates(String),
    #[error("incompatible grids: {0}")]
    IncompatibleGrids(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("factor {factor} has no unique maximum ({count} nodes tie for the maximum)")]
    AmbiguousMaximum { factor: usize, count: usize },
    #[error("difference of the two functions does not change sign between their maxima")]
    NoCrossing,
    #[error("crossing between the maxima is not isolated: {0}")]
    AmbiguousCrossing(String),
    #[error("all importance weights are zero")]
    DegenerateWeights,
    #[error("insufficient data: {usable} usable points, need at least 2")]
    InsufficientData { usable: usize },
    #[error("invalid fit point {index}: value {value} is not positive and finite")]
    InvalidPoint { index: usize, value: f64 },
    #[error("no row has mean above {threshold} standard errors; nothing to fit")]
    InsufficientSignal { threshold: f64 },
}

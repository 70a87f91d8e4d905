//! Overlap functionals between wave functions defined over beable
//! configurations.
//!
//! The crate is `no_std` (with `alloc`) and holds every numeric routine:
//! seeded sampling of random states, the strict-dominance overlap in its
//! discrete, tabulated and product-state forms, streaming statistics, and
//! the experiment drivers that combine them. IO, file formats and thread
//! pools live in the companion `pilot-overlap` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod exec;
pub mod experiments;
pub mod grid;
pub mod math;
pub mod overlap;
pub mod sampler;
pub mod seed;
pub mod stats;

pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
pub use grid::{BinaryState, GridFunction, GridSampler, ProductState};
pub use sampler::{CubePoint, StateKind, StateVector};
pub use seed::SeedSpec;
pub use stats::{FitResult, OverlapEstimate, RunningMoments};

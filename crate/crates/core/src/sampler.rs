//! Uniform random states on real and complex unit spheres, and uniform
//! points in the cube `[-1, 1]^N`.
//!
//! Sphere states are normalized vectors of independent standard normals,
//! which is exactly uniform in every dimension.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::math;
use crate::seed::SeedSpec;

/// Tolerance on the ℓ² norm of a state.
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateKind {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Amplitudes {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// Unit-norm state in `N` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Amplitudes,
}

impl StateVector {
    /// Wraps real amplitudes, checking that their norm is 1.
    pub fn real(amplitudes: Vec<f64>) -> Result<Self> {
        Self::checked(Amplitudes::Real(amplitudes))
    }

    pub fn complex(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::checked(Amplitudes::Complex(amplitudes))
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized_real(mut amplitudes: Vec<f64>) -> Result<Self> {
        let norm = l2_norm(&amplitudes);
        if amplitudes.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidParameter("cannot normalize a zero or non-finite vector".into()));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { amplitudes: Amplitudes::Real(amplitudes) })
    }

    fn checked(amplitudes: Amplitudes) -> Result<Self> {
        let state = Self { amplitudes };
        if state.dim() == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let norm_sq = state.norm_sq();
        if !(math::sqrt(norm_sq) - 1.0).abs().le(&NORM_TOLERANCE) {
            return Err(Error::InvalidParameter(alloc::format!(
                "state norm {} differs from 1 by more than {NORM_TOLERANCE}",
                math::sqrt(norm_sq)
            )));
        }
        Ok(state)
    }

    pub fn dim(&self) -> usize {
        match &self.amplitudes {
            Amplitudes::Real(a) => a.len(),
            Amplitudes::Complex(a) => a.len(),
        }
    }

    pub fn kind(&self) -> StateKind {
        match self.amplitudes {
            Amplitudes::Real(_) => StateKind::Real,
            Amplitudes::Complex(_) => StateKind::Complex,
        }
    }

    pub fn amplitudes(&self) -> &Amplitudes {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        math::sqrt(self.norm_sq())
    }

    fn norm_sq(&self) -> f64 {
        match &self.amplitudes {
            Amplitudes::Real(a) => a.iter().map(|x| x * x).sum(),
            Amplitudes::Complex(a) => a.iter().map(|z| z.norm_sqr()).sum(),
        }
    }

    /// Squared moduli `|ψⁱ|²`, divided by their sum so that a one-dimensional
    /// state has modulus exactly 1.
    pub fn moduli_sq(&self) -> Vec<f64> {
        let mut out = match &self.amplitudes {
            Amplitudes::Real(a) => a.iter().map(|x| x * x).collect::<Vec<_>>(),
            Amplitudes::Complex(a) => a.iter().map(|z| z.norm_sqr()).collect(),
        };
        normalize_sum(&mut out);
        out
    }
}

/// Point of the cube `[-1, 1]^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubePoint {
    coordinates: Vec<f64>,
}

impl CubePoint {
    pub fn new(coordinates: Vec<f64>) -> Result<Self> {
        if coordinates.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        if let Some(x) = coordinates.iter().find(|x| !(-1.0..=1.0).contains(*x)) {
            return Err(Error::InvalidParameter(alloc::format!("cube coordinate {x} outside [-1, 1]")));
        }
        Ok(Self { coordinates })
    }

    pub fn coordinates(&self) -> &[f64] {
        &self.coordinates
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    /// `‖x‖∞`
    pub fn max_norm(&self) -> f64 {
        max_abs(&self.coordinates)
    }

    /// `‖x‖₂`
    pub fn l2_norm(&self) -> f64 {
        l2_norm(&self.coordinates)
    }

    /// Radial projection `x / ‖x‖₂` onto the unit sphere.
    pub fn to_sphere(&self) -> Result<StateVector> {
        StateVector::normalized_real(self.coordinates.clone())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::InvalidDimension(0))
    } else {
        Ok(())
    }
}

pub fn sample_real_state(dim: usize, seed: SeedSpec, index: u64) -> Result<StateVector> {
    check_dim(dim)?;
    let mut rng = seed.sample_rng(index);
    let mut amps = alloc::vec![0.0; dim];
    fill_normals(&mut rng, &mut amps);
    StateVector::normalized_real(amps)
}

pub fn sample_complex_state(dim: usize, seed: SeedSpec, index: u64) -> Result<StateVector> {
    check_dim(dim)?;
    let mut rng = seed.sample_rng(index);
    let mut raw = alloc::vec![0.0; 2 * dim];
    fill_normals(&mut rng, &mut raw);
    let norm = l2_norm(&raw);
    let amps = raw.chunks_exact(2).map(|p| Complex64::new(p[0] / norm, p[1] / norm)).collect();
    Ok(StateVector { amplitudes: Amplitudes::Complex(amps) })
}

pub fn sample_cube_point(dim: usize, seed: SeedSpec, index: u64) -> Result<CubePoint> {
    check_dim(dim)?;
    let mut rng = seed.sample_rng(index);
    let mut coords = alloc::vec![0.0; dim];
    fill_cube(&mut rng, &mut coords);
    Ok(CubePoint { coordinates: coords })
}

// Buffer-filling variants used by the estimators' inner loops.

pub fn fill_normals<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    for x in out.iter_mut() {
        *x = rng.sample(StandardNormal);
    }
}

/// Uniform on `[-1, 1)`.
pub fn fill_cube<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    for x in out.iter_mut() {
        *x = 2.0 * rng.random::<f64>() - 1.0;
    }
}

/// Squared moduli of a uniform real sphere state, `gᵢ² / Σ g²`.
pub fn fill_real_moduli_sq<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    for m in out.iter_mut() {
        let g: f64 = rng.sample(StandardNormal);
        *m = g * g;
    }
    normalize_sum(out);
}

/// Squared moduli of a uniform complex sphere state, `(reᵢ² + imᵢ²) / Σ`.
pub fn fill_complex_moduli_sq<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    for m in out.iter_mut() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *m = re * re + im * im;
    }
    normalize_sum(out);
}

fn normalize_sum(values: &mut [f64]) {
    let total: f64 = values.iter().sum();
    values.iter_mut().for_each(|v| *v /= total);
}

pub fn l2_norm(x: &[f64]) -> f64 {
    math::sqrt(x.iter().map(|v| v * v).sum())
}

pub fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

//! Float helpers backed by `libm`, so results are identical with and
//! without `std`.

pub use core::f64::consts::{FRAC_1_PI, PI, SQRT_2};

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}

/// Standard normal cumulative distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

/// Probability density of `N(mean, 1)` at `x`.
pub fn normal_pdf(x: f64, mean: f64) -> f64 {
    let z = x - mean;
    exp(-0.5 * z * z) / sqrt(2.0 * PI)
}

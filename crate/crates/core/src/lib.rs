//! Weighted variable-exponent Lebesgue spaces on discretized measure spaces.

pub mod dims;
pub mod error;
pub mod extrapolation;
pub mod fourier;
pub mod harness;
pub mod norms;
pub mod operators;
pub mod space;
pub mod weights;

pub use error::{Error, Result};

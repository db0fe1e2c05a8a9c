//! Trigonometric series on circle grids: coefficients, partial sums and their
//! majorant, Littlewood–Paley blocks, summability means, series multipliers
//! and continuous multipliers with their sampled conditions.

mod multipliers;
mod series;
mod symbols;

pub use multipliers::{
    apply_series_multiplier, fractional_series_multiplier, lambda_kn_cesaro, lambda_kn_zygmund,
    marcinkiewicz_constant, sobolev_exponent, Atoms, MultiplierSeq,
};
pub use series::{
    cesaro_mean, dyadic_block, fourier_coeffs, littlewood_paley_square, majorant, modulus, partial_sum,
    steklov_mean, zygmund_mean, FourierSeries,
};
pub use symbols::{continuous_multiplier, multiplier_condition_report, MultiplierConditions, SymbolSpec};

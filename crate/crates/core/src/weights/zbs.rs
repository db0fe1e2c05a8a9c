use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use super::indices::{mo_indices, IndexGrid};
use super::Factor;
use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZbsReport {
    pub member: bool,
    /// Largest ratio of either integral to its bound over the scale grid.
    pub c_estimate: f64,
    /// Verdict of the two integral conditions alone.
    pub integrals_bounded: bool,
    /// The integral near zero grows with the truncation point.
    pub diverges_at_zero: bool,
    /// Verdict of `0 < m ≤ M < δ`.
    pub index_criterion: bool,
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
}

/// Cumulative trapezoid integrals of `exp(g(s))` on `s = s0 + k·step`.
fn cumulative(g: impl Fn(f64) -> f64, s0: f64, step: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count + 1);
    out.push(0.0);
    let mut prev = g(s0).exp();
    for k in 1..=count {
        let cur = g(s0 + k as f64 * step).exp();
        out.push(out[k - 1] + 0.5 * step * (prev + cur));
        prev = cur;
    }
    out
}

/// Membership of a factor in the Zygmund–Bary–Stechkin class on `(0, ℓ]`.
///
/// Both integrals are computed in the variable `s = ln t` for
/// `h = ℓ·2^{−j}`. The integral near zero is truncated at `ln t = −S` for
/// `S = 200` and `S = 400`; growth between the two flags divergence. The
/// constant is evaluated for `j ≤ 40` and again for `j ≤ 80`; growth above 25%
/// means no uniform constant. Membership also requires the index criterion.
pub fn check_zbs(factor: &Factor, delta: f64, ell: f64) -> Result<ZbsReport> {
    if !(delta > 0.0) {
        return Err(invalid("delta must be positive"));
    }
    if !(ell > 0.0 && ell.is_finite()) {
        return Err(invalid("ell must be positive and finite"));
    }
    factor.validate()?;
    const PER_OCTAVE: usize = 64;
    const S: f64 = 200.0;
    let step = LN_2 / PER_OCTAVE as f64;
    let ln_ell = ell.ln();
    let lnv = |s: f64| factor.ln_eval(s);

    // grid from ln ℓ − 2S up to ln ℓ, so every ln h_j is a grid point
    let octaves_total = (2.0 * S / LN_2).ceil() as usize;
    let count = octaves_total * PER_OCTAVE;
    let s0 = ln_ell - count as f64 * step;
    let near_zero = cumulative(lnv, s0, step, count);
    let far = cumulative(|s| lnv(s) - delta * s, s0, step, count);
    let idx_at = |j: usize| count - j * PER_OCTAVE;
    let half = count - (S / step).round() as usize;

    let mut diverges = false;
    let mut c_at = |j_max: usize| -> f64 {
        let mut c = 0.0f64;
        for j in 0..=j_max {
            let k = idx_at(j);
            let ln_h = s0 + k as f64 * step;
            let vh = lnv(ln_h);
            let i1_full = near_zero[k];
            let i1_short = near_zero[k] - near_zero[half.min(k)];
            if i1_full - i1_short > 1e-6 * i1_full.max(f64::MIN_POSITIVE) && i1_full > 0.0 {
                diverges = true;
            }
            let i2 = far[count] - far[k];
            let c1 = (i1_full.ln() - vh).exp();
            let c2 = if i2 > 0.0 { (i2.ln() - vh + delta * ln_h).exp() } else { 0.0 };
            c = c.max(c1).max(c2);
        }
        c
    };
    let c40 = c_at(40);
    let c80 = c_at(80);
    let integrals_bounded = !diverges && c80.is_finite() && c80 <= 1.25 * c40;

    let idx = mo_indices(factor, &IndexGrid::default())?;
    let index_criterion = 0.0 < idx.lower && idx.lower <= idx.upper && idx.upper < delta;
    Ok(ZbsReport {
        member: integrals_bounded && index_criterion,
        c_estimate: c80,
        integrals_bounded,
        diverges_at_zero: diverges,
        index_criterion,
        m: idx.lower,
        big_m: idx.upper,
    })
}

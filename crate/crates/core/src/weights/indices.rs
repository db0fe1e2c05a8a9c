use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use super::Factor;
use crate::error::{invalid, Result};

/// Estimation protocol for the indices.
///
/// Scales are `h = 2^{∓D}` for the depths `D` in `depths` (minus sign near
/// zero, plus sign near infinity); ratios `t = 2^τ` for `τ` in `t_log2`. The
/// limits over `h` are read off the deepest quarter of the depths, and the
/// estimate is marked converged when rerunning with every depth multiplied by
/// `deepen` moves both indices by less than `tol`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexGrid {
    pub depths: Vec<f64>,
    pub t_log2: Vec<f64>,
    pub deepen: f64,
    pub tol: f64,
}

impl Default for IndexGrid {
    /// 64 depths log-spaced from `2^2` to `2^20`, `t` up to `2^8`.
    fn default() -> Self {
        let levels = 64;
        let depths = (0..levels)
            .map(|k| 2f64.powf(2.0 + 18.0 * k as f64 / (levels - 1) as f64))
            .collect();
        IndexGrid { depths, t_log2: t_grid(8.0, 32), deepen: 256.0, tol: 1e-3 }
    }
}

fn t_grid(max_log2: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|i| max_log2 * i as f64 / count as f64).collect()
}

impl IndexGrid {
    /// Integer depths `j₀..=j₁`, deepened by 8 levels for the convergence check.
    pub fn fixed(j0: u32, j1: u32) -> Result<Self> {
        if j0 >= j1 {
            return Err(invalid("index grid needs j0 < j1"));
        }
        Ok(IndexGrid {
            depths: (j0..=j1).map(f64::from).collect(),
            t_log2: t_grid(8.0, 32),
            deepen: (j1 as f64 + 8.0) / j1 as f64,
            tol: 1e-3,
        })
    }

    fn deepened(&self) -> IndexGrid {
        IndexGrid { depths: self.depths.iter().map(|d| d * self.deepen).collect(), ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexEstimate {
    pub lower: f64,
    pub upper: f64,
    pub converged: bool,
}

/// Indices near zero and, when requested, near infinity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightIndices {
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_inf: Option<f64>,
    #[serde(rename = "M_inf", skip_serializing_if = "Option::is_none")]
    pub big_m_inf: Option<f64>,
    pub converged: bool,
    pub grid: IndexGrid,
}

impl WeightIndices {
    /// Both index pairs of a factor on the same grid.
    pub fn of(factor: &Factor, grid: &IndexGrid) -> Result<Self> {
        let zero = mo_indices(factor, grid)?;
        let inf = mo_indices_infinity(factor, grid)?;
        Ok(WeightIndices {
            m: zero.lower,
            big_m: zero.upper,
            m_inf: Some(inf.lower),
            big_m_inf: Some(inf.upper),
            converged: zero.converged && inf.converged,
            grid: grid.clone(),
        })
    }
}

fn raw_estimate(factor: &Factor, grid: &IndexGrid, sign: f64) -> Result<(f64, f64)> {
    if grid.depths.len() < 4 || grid.t_log2.is_empty() {
        return Err(invalid("index grid needs at least four depths and one ratio"));
    }
    let tail_start = grid.depths.len() - grid.depths.len().div_ceil(4);
    let tail = &grid.depths[tail_start..];
    let mut m = f64::NEG_INFINITY;
    let mut big_m = f64::NEG_INFINITY;
    for &tau in &grid.t_log2 {
        let ln_t = tau * LN_2;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &d in tail {
            let ln_h = sign * d * LN_2;
            let r = factor.ln_eval(ln_h + ln_t) - factor.ln_eval(ln_h);
            if !r.is_finite() {
                return Err(invalid("factor is not positive and finite on the index grid"));
            }
            lo = lo.min(r);
            hi = hi.max(r);
        }
        m = m.max(lo / ln_t);
        big_m = big_m.max(hi / ln_t);
    }
    Ok((m, big_m))
}

fn estimate(factor: &Factor, grid: &IndexGrid, sign: f64) -> Result<IndexEstimate> {
    factor.validate()?;
    let (m, big_m) = raw_estimate(factor, grid, sign)?;
    let (m2, big_m2) = raw_estimate(factor, &grid.deepened(), sign)?;
    let converged = (m - m2).abs() < grid.tol && (big_m - big_m2).abs() < grid.tol;
    Ok(IndexEstimate { lower: m2, upper: big_m2, converged })
}

/// Lower and upper Matuszewska–Orlicz indices of a factor near zero.
pub fn mo_indices(factor: &Factor, grid: &IndexGrid) -> Result<IndexEstimate> {
    estimate(factor, grid, -1.0)
}

/// The same indices for `h → ∞`.
pub fn mo_indices_infinity(factor: &Factor, grid: &IndexGrid) -> Result<IndexEstimate> {
    estimate(factor, grid, 1.0)
}

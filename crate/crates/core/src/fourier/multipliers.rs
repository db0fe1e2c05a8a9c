use std::path::Path;

use serde::{Deserialize, Serialize};

use super::series::{dyadic_block, synthesize, FourierSeries};
use crate::error::{invalid, io_err, Error, Result};
use crate::space::{GridFunction, UniformGrid1D, VariableExponent};

/// Multiplier sequence `λ₀, λ₁, …`; frequencies past the end multiply by 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplierSeq {
    pub values: Vec<f64>,
}

impl MultiplierSeq {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(MultiplierSeq { values })
    }

    pub fn get(&self, k: usize) -> f64 {
        self.values.get(k).copied().unwrap_or(0.0)
    }

    /// Rows `k,value`.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["k", "lambda"])?;
        for (k, v) in self.values.iter().enumerate() {
            w.write_record([k.to_string(), format!("{v:?}")])?;
        }
        w.flush().map_err(io_err(path))
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut r = csv::Reader::from_path(path)?;
        let mut values = Vec::new();
        for (row, rec) in r.records().enumerate() {
            let rec = rec?;
            let k: Option<usize> = rec.get(0).and_then(|s| s.trim().parse().ok());
            let v: Option<f64> = rec.get(1).and_then(|s| s.trim().parse().ok());
            match (k, v) {
                (Some(k), Some(v)) if k == row => values.push(v),
                _ => return Err(Error::Config(format!("{}: bad row {}", path.display(), row + 1))),
            }
        }
        MultiplierSeq::new(values)
    }
}

/// `max(sup_k |λ_k|, sup_j Σ_{k=2^{j−1}}^{2^j−1} |λ_k − λ_{k+1}|)`.
///
/// The `j = 1` block also carries `|λ₀ − λ₁|`. Differences are taken only
/// between stored entries.
pub fn marcinkiewicz_constant(lambda: &MultiplierSeq) -> f64 {
    let v = &lambda.values;
    let sup = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut blocks: Vec<f64> = Vec::new();
    for k in 0..v.len().saturating_sub(1) {
        let j = dyadic_block(k).max(1);
        if blocks.len() < j {
            blocks.resize(j, 0.0);
        }
        blocks[j - 1] += (v[k] - v[k + 1]).abs();
    }
    blocks.into_iter().fold(sup, f64::max)
}

/// `λ₀ a₀/2 + Σ_k λ_k A_k`.
pub fn apply_series_multiplier(series: &FourierSeries, lambda: &MultiplierSeq, grid: &UniformGrid1D) -> Result<GridFunction> {
    super::series::require_circle(grid)?;
    GridFunction::new(synthesize(series, series.order(), |k| lambda.get(k), grid))
}

/// `1 − sin t / t`, accurate for small `t`.
fn one_minus_sinc(t: f64) -> f64 {
    if t.abs() < 1e-2 {
        let t2 = t * t;
        t2 / 6.0 - t2 * t2 / 120.0 + t2 * t2 * t2 / 5040.0
    } else {
        1.0 - t.sin() / t
    }
}

fn lambda_kn(n: usize, lambda0: f64, entry: impl Fn(f64, f64) -> f64) -> Result<MultiplierSeq> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let nf = n as f64;
    let mut values = Vec::with_capacity(n + 2);
    values.push(lambda0);
    for k in 1..=n {
        let k = k as f64;
        values.push(entry(k, nf) / one_minus_sinc(k / nf));
    }
    values.push(0.0);
    MultiplierSeq::new(values)
}

/// `λ_{k,n} = (k/(n+1))² / (1 − sin(k/n)/(k/n))` for `1 ≤ k ≤ n`, zero past
/// `n`, and the limit `6(n/(n+1))²` at `k = 0`. Entries run to `k = n + 1`.
pub fn lambda_kn_zygmund(n: usize) -> Result<MultiplierSeq> {
    let nf = n as f64;
    lambda_kn(n, 6.0 * (nf / (nf + 1.0)).powi(2), |k, n| (k / (n + 1.0)).powi(2))
}

/// `λ_{k,n} = (k/(n+1)) / (n(1 − sin(k/n)/(k/n)))` for `1 ≤ k ≤ n`, zero at
/// `k = 0` and past `n`.
pub fn lambda_kn_cesaro(n: usize) -> Result<MultiplierSeq> {
    lambda_kn(n, 0.0, |k, n| k / (n + 1.0) / n)
}

/// Atoms `(t, w)` of a discrete measure on the line.
pub type Atoms = Vec<(f64, f64)>;

/// `λ_k = Σ_{t < k} w (k − t)^{−α}` over the atoms of the block of `k`
/// (`2^j ≤ k < 2^{j+1}` uses table `j`; a single table serves every block),
/// with `λ₀ = 0`.
pub fn fractional_series_multiplier(alpha: f64, measures: &[Atoms], n: usize) -> Result<MultiplierSeq> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid("alpha must lie in (0, 1)"));
    }
    if measures.is_empty() {
        return Err(invalid("at least one measure table is required"));
    }
    let mut values = vec![0.0; n + 1];
    for (k, slot) in values.iter_mut().enumerate().skip(1) {
        let j = dyadic_block(k) - 1;
        let atoms = if measures.len() == 1 {
            &measures[0]
        } else {
            measures
                .get(j)
                .ok_or_else(|| invalid(format!("no measure table for the block of k = {k}")))?
        };
        let lam = k as f64;
        let mut s = 0.0;
        for &(t, w) in atoms {
            if t == lam {
                return Err(invalid(format!("atom at t = {t} collides with a frequency; shift it off the integers")));
            }
            if t < lam {
                s += w * (lam - t).powf(-alpha);
            }
        }
        *slot = s;
    }
    MultiplierSeq::new(values)
}

/// `q` with `1/q = 1/p − α/n`.
pub fn sobolev_exponent(p: &VariableExponent, alpha: f64, dim: f64) -> Result<VariableExponent> {
    p.sobolev(alpha, dim)
}

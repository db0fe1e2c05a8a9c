use rayon::prelude::*;

use super::maximal::sweep;
use crate::error::{check_len, invalid, Error, Result};
use crate::space::{DiscreteMeasureSpace, GridFunction, UniformGrid1D};

/// Potential `∫ f(y) dμ(y) / μB(x, d(x,y))^{1−γ}`.
///
/// The diagonal contributes `μ_x^γ f(x)`, the ball of radius half the minimal
/// spacing being the singleton.
pub fn metric_potential(f: &[f64], gamma: f64, space: &DiscreteMeasureSpace) -> Result<GridFunction> {
    check_len(space.len(), f.len())?;
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(invalid("potential order must lie in (0, 1)"));
    }
    let masses = space.masses();
    Ok(GridFunction::from_vec(sweep(space, |x, shells| {
        let mut inner = masses[x];
        let mut total = inner.powf(gamma) * f[x];
        for s in 1..shells.len() {
            let mut shell_sum = 0.0;
            let mut shell_mass = 0.0;
            for &j in shells.members(s) {
                shell_sum += f[j] * masses[j];
                shell_mass += masses[j];
            }
            total += shell_sum / inner.powf(1.0 - gamma);
            inner += shell_mass;
        }
        total
    })))
}

/// `∫_lo^hi |x − y|^{α−1} dy`.
fn kernel_cell(alpha: f64, x: f64, lo: f64, hi: f64) -> f64 {
    let g = |t: f64| t.signum() * t.abs().powf(alpha) / alpha;
    g(hi - x) - g(lo - x)
}

fn check_riesz(alpha: f64, grid: &UniformGrid1D) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid("Riesz order must lie in (0, 1) on the line"));
    }
    if grid.circle {
        return Err(Error::UnsupportedSpace("Riesz potential needs an interval grid".into()));
    }
    Ok(())
}

/// Riesz potential `∫ f(y) |x − y|^{α−1} dy` at the grid nodes, integrating the
/// kernel exactly over every cell against piecewise-constant `f`.
pub fn riesz_potential(f: &[f64], alpha: f64, grid: &UniformGrid1D) -> Result<GridFunction> {
    check_len(grid.n, f.len())?;
    check_riesz(alpha, grid)?;
    let n = grid.n;
    let h = grid.h;
    // weight for offset k = i − j depends on |k| only
    let w: Vec<f64> = (0..n)
        .map(|k| kernel_cell(alpha, 0.0, (k as f64 - 0.5) * h, (k as f64 + 0.5) * h))
        .collect();
    let out = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| w[i.abs_diff(j)] * f[j]).sum())
        .collect();
    Ok(GridFunction::from_vec(out))
}

/// Riesz potential of the piecewise-constant extension of `f` at an arbitrary point.
pub fn riesz_potential_at(f: &[f64], alpha: f64, grid: &UniformGrid1D, x: f64) -> Result<f64> {
    check_len(grid.n, f.len())?;
    check_riesz(alpha, grid)?;
    if !x.is_finite() {
        return Err(invalid("evaluation point must be finite"));
    }
    Ok((0..grid.n)
        .map(|j| {
            let lo = grid.a + j as f64 * grid.h;
            f[j] * kernel_cell(alpha, x, lo, lo + grid.h)
        })
        .sum())
}

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::singular::OperatorReport;
use crate::error::{check_len, invalid, Error, Result};
use crate::space::{ComplexGridFunction, UniformGrid1D};

/// Highest frequency resolved on a circle grid of `n` nodes.
pub(crate) fn max_frequency(n: usize) -> i64 {
    ((n - 1) / 2) as i64
}

/// `f̂(ξ) = (1/2π) Σ f(θ_j) e^{−iξθ_j} h` for `|ξ| ≤ K`, indexed `ξ + K`.
pub(crate) fn circle_transform(f: &[Complex64], grid: &UniformGrid1D) -> Vec<Complex64> {
    let k = max_frequency(grid.n);
    let nodes = grid.nodes();
    (-k..=k)
        .into_par_iter()
        .map(|xi| {
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &t) in nodes.iter().enumerate() {
                s += f[j] * Complex64::from_polar(1.0, -(xi as f64) * t);
            }
            s * grid.h / (2.0 * PI)
        })
        .collect()
}

/// Pseudo-differential operator `σ(x, D)` on the circle: for each node,
/// `Σ_ξ σ(x_i, ξ) f̂(ξ) e^{iξx_i}` over integer frequencies.
///
/// Diagnostics `order0`, `order1`, `order2` hold sampled sups of
/// `|∂_ξ^k σ|(1 + |ξ|)^k` by central differences.
pub fn pseudodiff_apply(
    sigma: impl Fn(f64, f64) -> Complex64 + Sync,
    f: &[Complex64],
    grid: &UniformGrid1D,
) -> Result<OperatorReport> {
    if !grid.circle {
        return Err(Error::UnsupportedSpace("pseudo-differential operators need a circle grid".into()));
    }
    check_len(grid.n, f.len())?;
    let k = max_frequency(grid.n);
    let fhat = circle_transform(f, grid);
    let nodes = grid.nodes();
    let out: Vec<Complex64> = nodes
        .par_iter()
        .map(|&x| {
            let mut s = Complex64::new(0.0, 0.0);
            for xi in -k..=k {
                s += sigma(x, xi as f64) * fhat[(xi + k) as usize] * Complex64::from_polar(1.0, xi as f64 * x);
            }
            s
        })
        .collect();
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(invalid("symbol produced non-finite values"));
    }
    let mut diagnostics = BTreeMap::new();
    let stride = (grid.n / 32).max(1);
    let mut sup = [0.0f64; 3];
    let mut xi_samples = vec![0.0];
    let mut r = 1.0;
    while r <= k as f64 {
        xi_samples.push(r);
        xi_samples.push(-r);
        xi_samples.push(1.5 * r);
        xi_samples.push(-1.5 * r);
        r *= 2.0;
    }
    for i in (0..grid.n).step_by(stride) {
        let x = nodes[i];
        for &xi in &xi_samples {
            let d = 1e-3 * (1.0 + xi.abs());
            let c = sigma(x, xi);
            let p = sigma(x, xi + d);
            let m = sigma(x, xi - d);
            let w = 1.0 + xi.abs();
            sup[0] = sup[0].max(c.norm());
            sup[1] = sup[1].max(((p - m) / (2.0 * d)).norm() * w);
            sup[2] = sup[2].max(((p - 2.0 * c + m) / (d * d)).norm() * w * w);
        }
    }
    if sup.iter().any(|v| !v.is_finite()) {
        return Err(invalid("symbol produced non-finite values"));
    }
    diagnostics.insert("order0".to_string(), sup[0]);
    diagnostics.insert("order1".to_string(), sup[1]);
    diagnostics.insert("order2".to_string(), sup[2]);
    Ok(OperatorReport { output: ComplexGridFunction::new(out)?, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::build_circle_grid;

    fn band_limited(grid: &UniformGrid1D) -> Vec<Complex64> {
        grid.nodes()
            .iter()
            .map(|&t| Complex64::new(1.0 + (3.0 * t).cos() - 0.5 * (7.0 * t).sin(), 0.0))
            .collect()
    }

    #[test]
    fn identity_symbol() {
        let g = build_circle_grid(64).unwrap();
        let f = band_limited(&g);
        let r = pseudodiff_apply(|_, _| Complex64::new(1.0, 0.0), &f, &g).unwrap();
        for i in 0..64 {
            assert!((r.output[i] - f[i]).norm() < 1e-10);
        }
        assert!((r.diagnostics["order0"] - 1.0).abs() < 1e-15);
        assert!(r.diagnostics["order1"] < 1e-9);
    }

    #[test]
    fn multiplication_symbol() {
        let g = build_circle_grid(64).unwrap();
        let f = band_limited(&g);
        let r = pseudodiff_apply(|x, _| Complex64::from_polar(1.0, x), &f, &g).unwrap();
        for (i, &x) in g.nodes().iter().enumerate() {
            assert!((r.output[i] - Complex64::from_polar(1.0, x) * f[i]).norm() < 1e-10);
        }
    }

    #[test]
    fn rejects_interval() {
        let g = crate::space::build_interval_grid(0.0, 1.0, 8).unwrap();
        assert!(pseudodiff_apply(|_, _| Complex64::new(1.0, 0.0), &[Complex64::default(); 8], &g).is_err());
    }
}

use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, invalid, io_err, Error, Result};
use crate::norms::weighted_norm_value;
use crate::space::{GridFunction, UniformGrid1D, VariableExponent};

/// Trigonometric coefficients `a₀..a_K`, `b₀..b_K` (`b₀ = 0`) of a function
/// on a circle grid of `n` nodes, `K = n/2 − 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierSeries {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl FourierSeries {
    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    /// `A_k(θ) = a_k cos kθ + b_k sin kθ`, with `A₀ = a₀/2`.
    pub fn term(&self, k: usize, theta: f64) -> f64 {
        if k == 0 {
            0.5 * self.a[0]
        } else {
            let (s, c) = (k as f64 * theta).sin_cos();
            self.a[k] * c + self.b[k] * s
        }
    }

    /// Rows `k,a_k,b_k`.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv::Writer::from_path(path).map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => io_err(path)(io),
            other => Error::Config(format!("{other:?}")),
        })?;
        w.write_record(["k", "a", "b"])?;
        for k in 0..self.a.len() {
            w.write_record([k.to_string(), format!("{:?}", self.a[k]), format!("{:?}", self.b[k])])?;
        }
        w.flush().map_err(io_err(path))
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut r = csv::Reader::from_path(path)?;
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (row, rec) in r.records().enumerate() {
            let rec = rec?;
            let field = |i: usize| -> Result<f64> {
                rec.get(i)
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| Error::Config(format!("{}: bad row {}", path.display(), row + 1)))
            };
            if field(0)? as usize != row {
                return Err(Error::Config(format!("{}: rows must list k = 0, 1, ...", path.display())));
            }
            a.push(field(1)?);
            b.push(field(2)?);
        }
        if a.is_empty() {
            return Err(Error::Config(format!("{}: no coefficients", path.display())));
        }
        Ok(FourierSeries { a, b })
    }
}

pub(crate) fn require_circle(grid: &UniformGrid1D) -> Result<()> {
    if grid.circle {
        Ok(())
    } else {
        Err(Error::UnsupportedSpace("trigonometric series need a circle grid".into()))
    }
}

/// `e^{ikθ}` for `k = 0..=upto` by rotation, resynchronized every 32 steps.
fn rotations(theta: f64, upto: usize) -> impl Iterator<Item = Complex64> {
    let step = Complex64::from_polar(1.0, theta);
    let mut z = Complex64::new(1.0, 0.0);
    (0..=upto).map(move |k| {
        let out = z;
        z = if (k + 1) % 32 == 0 { Complex64::from_polar(1.0, (k + 1) as f64 * theta) } else { z * step };
        out
    })
}

/// `a_k = (1/π) Σ f(θ_i) cos kθ_i h`, likewise `b_k`.
pub fn fourier_coeffs(f: &[f64], grid: &UniformGrid1D) -> Result<FourierSeries> {
    require_circle(grid)?;
    check_len(grid.n, f.len())?;
    let k_max = grid.n / 2 - 1;
    let nodes = grid.nodes();
    let scale = grid.h / std::f64::consts::PI;
    let (a, b) = (0..=k_max)
        .into_par_iter()
        .map(|k| {
            let (mut sa, mut sb) = (0.0, 0.0);
            for (i, &t) in nodes.iter().enumerate() {
                let (s, c) = (k as f64 * t).sin_cos();
                sa += f[i] * c;
                sb += f[i] * s;
            }
            (sa * scale, if k == 0 { 0.0 } else { sb * scale })
        })
        .unzip();
    Ok(FourierSeries { a, b })
}

/// `Σ_{k=0}^{upto} c_k A_k(θ_i)` at every node.
pub(crate) fn synthesize(
    series: &FourierSeries,
    upto: usize,
    coef: impl Fn(usize) -> f64 + Sync,
    grid: &UniformGrid1D,
) -> Vec<f64> {
    let upto = upto.min(series.order());
    grid.nodes()
        .par_iter()
        .map(|&t| {
            let mut s = 0.0;
            for (k, z) in rotations(t, upto).enumerate() {
                let c = coef(k);
                if c != 0.0 {
                    s += c * if k == 0 { 0.5 * series.a[0] } else { series.a[k] * z.re + series.b[k] * z.im };
                }
            }
            s
        })
        .collect()
}

fn check_order(series: &FourierSeries, n: usize) -> Result<()> {
    if n > series.order() {
        Err(invalid(format!("order {n} exceeds the series order {}", series.order())))
    } else {
        Ok(())
    }
}

fn check_grid(series: &FourierSeries, grid: &UniformGrid1D) -> Result<()> {
    require_circle(grid)?;
    if series.b.len() != series.a.len() {
        return Err(invalid("cosine and sine coefficient counts differ"));
    }
    Ok(())
}

/// `S_n = a₀/2 + Σ_{k=1}^n A_k`.
pub fn partial_sum(series: &FourierSeries, n: usize, grid: &UniformGrid1D) -> Result<GridFunction> {
    check_grid(series, grid)?;
    check_order(series, n)?;
    GridFunction::new(synthesize(series, n, |_| 1.0, grid))
}

/// `max_{k ≤ n_max} |S_k|` pointwise.
pub fn majorant(series: &FourierSeries, grid: &UniformGrid1D, n_max: usize) -> Result<GridFunction> {
    check_grid(series, grid)?;
    check_order(series, n_max)?;
    let out = grid
        .nodes()
        .par_iter()
        .map(|&t| {
            let mut s = 0.0f64;
            let mut best = 0.0f64;
            for (k, z) in rotations(t, n_max).enumerate() {
                s += if k == 0 { 0.5 * series.a[0] } else { series.a[k] * z.re + series.b[k] * z.im };
                best = best.max(s.abs());
            }
            best
        })
        .collect();
    GridFunction::new(out)
}

/// Dyadic block of a frequency: `0` for `k = 0`, else `j` with
/// `2^{j−1} ≤ k ≤ 2^j − 1`.
pub fn dyadic_block(k: usize) -> usize {
    if k == 0 {
        0
    } else {
        (usize::BITS - k.leading_zeros()) as usize
    }
}

/// `(Σ_j |Σ_{k in block j} A_k|²)^{1/2}` with block 0 holding `a₀/2` alone.
pub fn littlewood_paley_square(series: &FourierSeries, grid: &UniformGrid1D) -> Result<GridFunction> {
    check_grid(series, grid)?;
    let k_max = series.order();
    let out = grid
        .nodes()
        .par_iter()
        .map(|&t| {
            let mut total = 0.0;
            let mut block = 0;
            let mut acc = 0.0;
            for (k, z) in rotations(t, k_max).enumerate() {
                let j = dyadic_block(k);
                if j != block {
                    total += acc * acc;
                    acc = 0.0;
                    block = j;
                }
                acc += if k == 0 { 0.5 * series.a[0] } else { series.a[k] * z.re + series.b[k] * z.im };
            }
            (total + acc * acc).sqrt()
        })
        .collect();
    GridFunction::new(out)
}

/// `Z_n = Σ_{k=0}^n [1 − (k/(n+1))²] A_k`.
pub fn zygmund_mean(series: &FourierSeries, n: usize, grid: &UniformGrid1D) -> Result<GridFunction> {
    check_grid(series, grid)?;
    check_order(series, n)?;
    let d = (n + 1) as f64;
    GridFunction::new(synthesize(series, n, |k| 1.0 - (k as f64 / d).powi(2), grid))
}

/// `σ_n = (1/(n+1)) Σ_{k=0}^n S_k = Σ_{k=0}^n [1 − k/(n+1)] A_k`.
pub fn cesaro_mean(series: &FourierSeries, n: usize, grid: &UniformGrid1D) -> Result<GridFunction> {
    check_grid(series, grid)?;
    check_order(series, n)?;
    let d = (n + 1) as f64;
    GridFunction::new(synthesize(series, n, |k| 1.0 - k as f64 / d, grid))
}

/// `τ_h f(x) = (1/2h) ∫_{x−h}^{x+h} f` for `f` constant on grid cells; cells
/// cut by the window count in proportion to the covered part.
pub fn steklov_mean(f: &[f64], h: f64, grid: &UniformGrid1D) -> Result<GridFunction> {
    require_circle(grid)?;
    check_len(grid.n, f.len())?;
    if !(h > 0.0 && h < std::f64::consts::PI) {
        return Err(invalid("the Steklov step must lie in (0, π)"));
    }
    let n = grid.n;
    let w = h / grid.h;
    if w <= 0.5 {
        return GridFunction::new(f.to_vec());
    }
    let full = (w - 0.5).floor() as usize;
    let frac = w - 0.5 - full as f64;
    if 2 * full + 3 > n {
        return Err(invalid("the Steklov window wraps around the circle"));
    }
    let out = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut s = f[i];
            for j in 1..=full {
                s += f[(i + j) % n] + f[(i + n - j) % n];
            }
            s += frac * (f[(i + full + 1) % n] + f[(i + n - full - 1) % n]);
            s / (2.0 * w)
        })
        .collect();
    GridFunction::new(out)
}

/// `max_{h ∈ {δ, δ/2, δ/4, δ/8}} ‖(I − τ_h) f‖` in the weighted norm.
pub fn modulus(f: &[f64], p: &VariableExponent, rho: &[f64], delta: f64, grid: &UniformGrid1D) -> Result<f64> {
    require_circle(grid)?;
    check_len(grid.n, f.len())?;
    check_len(grid.n, rho.len())?;
    p.check_space(grid)?;
    if !(delta > grid.h) {
        return Err(invalid("delta must exceed the grid spacing"));
    }
    let mut best = 0.0f64;
    for s in 0..4 {
        let h = (delta / f64::from(1 << s)).min(std::f64::consts::PI * 0.999);
        let t = steklov_mean(f, h, grid)?;
        let diff: Vec<f64> = f.iter().zip(t.iter()).map(|(a, b)| a - b).collect();
        best = best.max(weighted_norm_value(&diff, p.values(), rho, grid));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::build_circle_grid;

    fn grid(n: usize) -> UniformGrid1D {
        build_circle_grid(n).unwrap()
    }

    fn sample(g: &UniformGrid1D, f: impl Fn(f64) -> f64) -> Vec<f64> {
        g.nodes().iter().map(|&t| f(t)).collect()
    }

    #[test]
    fn coefficients_of_simple_functions() {
        let g = grid(64);
        let s = fourier_coeffs(&sample(&g, f64::cos), &g).unwrap();
        for k in 0..s.a.len() {
            let ea = if k == 1 { 1.0 } else { 0.0 };
            assert!((s.a[k] - ea).abs() < 1e-12 && s.b[k].abs() < 1e-12);
        }
        let one = fourier_coeffs(&vec![1.0; 64], &g).unwrap();
        assert!((one.a[0] - 2.0).abs() < 1e-12);
        let s = fourier_coeffs(&sample(&g, |t| (3.0 * t).sin() + 0.5 * (7.0 * t).cos()), &g).unwrap();
        assert!((s.b[3] - 1.0).abs() < 1e-12 && (s.a[7] - 0.5).abs() < 1e-12);
        assert_eq!(s.order(), 31);
    }

    #[test]
    fn parseval_and_roundtrip() {
        let g = grid(128);
        let f = sample(&g, |t| 0.3 + (2.0 * t).cos() - 0.7 * (9.0 * t).sin() + 0.1 * (40.0 * t).cos());
        let s = fourier_coeffs(&f, &g).unwrap();
        let l2: f64 = f.iter().map(|v| v * v * g.h).sum();
        let spec: f64 = std::f64::consts::PI
            * (0.5 * s.a[0] * s.a[0] + (1..s.a.len()).map(|k| s.a[k].powi(2) + s.b[k].powi(2)).sum::<f64>());
        assert!((l2 - spec).abs() < 1e-10);
        let back = partial_sum(&s, s.order(), &g).unwrap();
        assert!(back.iter().zip(&f).all(|(a, b)| (a - b).abs() < 1e-10));
    }

    #[test]
    fn partial_sums_and_majorant() {
        let g = grid(64);
        let s = fourier_coeffs(&sample(&g, f64::cos), &g).unwrap();
        assert!(partial_sum(&s, 0, &g).unwrap().iter().all(|v| v.abs() < 1e-12));
        let m = majorant(&s, &g, 5).unwrap();
        assert!(m.iter().zip(g.nodes()).all(|(v, t)| (v - t.cos().abs()).abs() < 1e-12));
        assert!(partial_sum(&s, 40, &g).is_err());
        let f = sample(&g, |t| t.cos() - (2.0 * t).cos());
        let s = fourier_coeffs(&f, &g).unwrap();
        let m = majorant(&s, &g, 10).unwrap();
        for (i, &t) in g.nodes().iter().enumerate() {
            let mut best = 0.0f64;
            for k in 0..=10 {
                let v: f64 = (0..=k).map(|j| s.term(j, t)).sum();
                best = best.max(v.abs());
            }
            assert!((m[i] - best).abs() < 1e-12);
        }
    }

    #[test]
    fn square_wave_partial_sum() {
        let g = grid(256);
        let f = sample(&g, |t| if t > 0.0 { 1.0 } else { -1.0 });
        let s = fourier_coeffs(&f, &g).unwrap();
        let i = g.nodes().iter().position(|&t| t > std::f64::consts::FRAC_PI_2).unwrap();
        let t = g.node(i);
        let expected: f64 = (1..=9).map(|k| s.b[k] * (k as f64 * t).sin() + s.a[k] * (k as f64 * t).cos()).sum();
        assert!((partial_sum(&s, 9, &g).unwrap()[i] - expected).abs() < 1e-12);
        let ideal: f64 = (1..=9).step_by(2).map(|k| 4.0 / (std::f64::consts::PI * k as f64) * (k as f64 * t).sin()).sum();
        assert!((expected - ideal).abs() < 1e-2);
    }

    #[test]
    fn littlewood_paley_blocks() {
        let g = grid(64);
        let lp = |f: &dyn Fn(f64) -> f64| littlewood_paley_square(&fourier_coeffs(&sample(&g, f), &g).unwrap(), &g).unwrap();
        let a = lp(&|t| (3.0 * t).cos());
        assert!(a.iter().zip(g.nodes()).all(|(v, t)| (v - (3.0 * t).cos().abs()).abs() < 1e-12));
        assert!(lp(&|_| 1.0).iter().all(|v| (v - 1.0).abs() < 1e-12));
        let b = lp(&|t| t.cos() + (4.0 * t).cos());
        for (v, t) in b.iter().zip(g.nodes()) {
            assert!((v - (t.cos().powi(2) + (4.0 * t).cos().powi(2)).sqrt()).abs() < 1e-12);
        }
        assert_eq!((dyadic_block(1), dyadic_block(2), dyadic_block(3), dyadic_block(4)), (1, 2, 2, 3));
    }

    #[test]
    fn summability_closed_forms() {
        let g = grid(2048);
        let s = fourier_coeffs(&sample(&g, f64::cos), &g).unwrap();
        for n in [1usize, 4, 50] {
            let z = zygmund_mean(&s, n, &g).unwrap();
            let c = cesaro_mean(&s, n, &g).unwrap();
            let d = (n + 1) as f64;
            for (i, &t) in g.nodes().iter().enumerate() {
                assert!((z[i] - (1.0 - 1.0 / (d * d)) * t.cos()).abs() < 1e-10);
                assert!((c[i] - n as f64 / d * t.cos()).abs() < 1e-10);
            }
        }
        let one = fourier_coeffs(&vec![1.0; 2048], &g).unwrap();
        assert!(zygmund_mean(&one, 3, &g).unwrap().iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn steklov_closed_form() {
        let g = grid(2048);
        let f = sample(&g, f64::cos);
        for h in [0.01, 0.1, 0.5, 1.0, 2.0] {
            let t = steklov_mean(&f, h, &g).unwrap();
            let err = t.iter().zip(g.nodes()).map(|(v, x)| (v - h.sin() / h * x.cos()).abs()).fold(0.0, f64::max);
            assert!(err < 1e-6, "h = {h}: {err}");
        }
        let p = VariableExponent::constant(&g, 2.0).unwrap();
        let m = modulus(&vec![3.0; 2048], &p, &vec![1.0; 2048], 0.2, &g).unwrap();
        assert!(m < 1e-12);
    }
}

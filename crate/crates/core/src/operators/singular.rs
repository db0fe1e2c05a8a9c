use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::maximal::sharp_maximal;
use crate::error::{check_len, invalid, Error, Result};
use crate::space::{ComplexGridFunction, DiscreteMeasureSpace};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Kernel families for truncated singular and potential operators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelKind {
    /// `1 / (x − y)`, with complex positions on planar curves.
    Hilbert,
    /// `|x − y|^{α − n}`.
    Riesz { alpha: f64 },
    /// `(1/πi) T(y) / (y − x)` on curves: the Cauchy kernel against arc length.
    Cauchy,
    /// Row-major `N × N` table indexed by point ids.
    Custom { table: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    #[serde(flatten)]
    pub kind: KernelKind,
    /// Ambient dimension.
    #[serde(default = "one_usize")]
    pub n: usize,
    /// Smoothness exponent of the regularity conditions.
    #[serde(default = "one_f64")]
    pub alpha_smooth: f64,
    /// Truncation radius.
    pub eps: f64,
}

fn one_usize() -> usize {
    1
}

fn one_f64() -> f64 {
    1.0
}

impl KernelSpec {
    pub fn hilbert(eps: f64) -> Self {
        KernelSpec { kind: KernelKind::Hilbert, n: 1, alpha_smooth: 1.0, eps }
    }

    pub fn riesz(alpha: f64, eps: f64) -> Self {
        KernelSpec { kind: KernelKind::Riesz { alpha }, n: 1, alpha_smooth: 1.0, eps }
    }

    pub fn cauchy(eps: f64) -> Self {
        KernelSpec { kind: KernelKind::Cauchy, n: 1, alpha_smooth: 1.0, eps }
    }

    pub fn custom(table: Vec<f64>, eps: f64) -> Self {
        KernelSpec { kind: KernelKind::Custom { table }, n: 1, alpha_smooth: 1.0, eps }
    }

    fn validate(&self, space: &DiscreteMeasureSpace) -> Result<()> {
        if !(self.eps > 0.0) {
            return Err(invalid("kernel truncation eps must be positive"));
        }
        if !(self.alpha_smooth > 0.0) {
            return Err(invalid("kernel smoothness exponent must be positive"));
        }
        if self.n == 0 {
            return Err(invalid("ambient dimension must be positive"));
        }
        match &self.kind {
            KernelKind::Riesz { alpha } if !(*alpha >= 0.0 && *alpha < self.n as f64) => {
                Err(invalid("Riesz kernel order must lie in [0, n)"))
            }
            KernelKind::Custom { table } => check_len(space.len() * space.len(), table.len()),
            KernelKind::Cauchy if space.tangent(0).is_none() => {
                Err(Error::UnsupportedSpace("Cauchy kernel needs a planar curve".into()))
            }
            _ => {
                position(space, 0)?;
                Ok(())
            }
        }
    }

    /// `K(x, y)` for point ids.
    pub fn eval(&self, space: &DiscreteMeasureSpace, x: usize, y: usize) -> Complex64 {
        match &self.kind {
            KernelKind::Hilbert => {
                let d = pos(space, x) - pos(space, y);
                1.0 / d
            }
            KernelKind::Riesz { alpha } => {
                let d = (pos(space, x) - pos(space, y)).norm();
                Complex64::new(d.powf(alpha - self.n as f64), 0.0)
            }
            KernelKind::Cauchy => {
                let t = space.tangent(y).unwrap_or(Complex64::new(1.0, 0.0));
                t / (PI * I * (pos(space, y) - pos(space, x)))
            }
            KernelKind::Custom { table } => Complex64::new(table[x * space.len() + y], 0.0),
        }
    }
}

fn position(space: &DiscreteMeasureSpace, i: usize) -> Result<Complex64> {
    if let Some(z) = space.planar_point(i) {
        return Ok(z);
    }
    space
        .coord(i)
        .map(|x| Complex64::new(x, 0.0))
        .ok_or_else(|| Error::UnsupportedSpace("kernel needs coordinates or a planar embedding".into()))
}

fn pos(space: &DiscreteMeasureSpace, i: usize) -> Complex64 {
    position(space, i).unwrap_or_default()
}

/// Ambient (Euclidean) distance used by the kernel conditions.
fn ambient(space: &DiscreteMeasureSpace, x: usize, y: usize) -> f64 {
    (pos(space, x) - pos(space, y)).norm()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorReport {
    pub output: ComplexGridFunction,
    pub diagnostics: BTreeMap<String, f64>,
}

fn apply_truncated(kernel: &KernelSpec, f: &[Complex64], space: &DiscreteMeasureSpace) -> Vec<Complex64> {
    let masses = space.masses();
    (0..space.len())
        .into_par_iter()
        .map(|x| {
            let mut s = Complex64::new(0.0, 0.0);
            for y in 0..space.len() {
                if space.dist(x, y) > kernel.eps {
                    s += kernel.eval(space, x, y) * f[y] * masses[y];
                }
            }
            s
        })
        .collect()
}

/// Truncated operator `T_ε f(x) = Σ_{d(x,y) > ε} K(x,y) f(y) μ_y`, with the
/// size constant `sup |K(x,y)|·|x − y|^n` among the diagnostics.
pub fn cz_apply(f: &[Complex64], kernel: &KernelSpec, space: &DiscreteMeasureSpace) -> Result<OperatorReport> {
    check_len(space.len(), f.len())?;
    kernel.validate(space)?;
    let output = apply_truncated(kernel, f, space);
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("size".to_string(), size_constant(kernel, space));
    Ok(OperatorReport { output: ComplexGridFunction::new(output)?, diagnostics })
}

/// Real-input convenience wrapper for [`cz_apply`].
pub fn cz_apply_real(f: &[f64], kernel: &KernelSpec, space: &DiscreteMeasureSpace) -> Result<OperatorReport> {
    let fc: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    cz_apply(&fc, kernel, space)
}

fn size_constant(kernel: &KernelSpec, space: &DiscreteMeasureSpace) -> f64 {
    let n = space.len();
    (0..n)
        .into_par_iter()
        .map(|x| {
            let mut best = 0.0f64;
            for y in 0..n {
                if y != x {
                    let d = ambient(space, x, y);
                    best = best.max(kernel.eval(space, x, y).norm() * d.powi(kernel.n as i32));
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

/// Principal-value Cauchy singular integral on a planar curve: the diagonal
/// node is excluded and the line element is the tangent times arc length.
pub fn cauchy_singular(f: &[Complex64], curve: &DiscreteMeasureSpace) -> Result<ComplexGridFunction> {
    check_len(curve.len(), f.len())?;
    if curve.tangent(0).is_none() {
        return Err(Error::UnsupportedSpace("Cauchy integral needs a planar curve".into()));
    }
    let n = curve.len();
    let masses = curve.masses();
    let out = (0..n)
        .into_par_iter()
        .map(|i| {
            let t = pos(curve, i);
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let tau = pos(curve, j);
                    let dtau = curve.tangent(j).unwrap_or_default() * masses[j];
                    s += f[j] * dtau / (tau - t);
                }
            }
            s / (PI * I)
        })
        .collect();
    ComplexGridFunction::new(out)
}

/// Sampled constants of the size and smoothness conditions over triples with
/// `|x′ − x| < ½|x − y|`, plus an empirical `L²` bound of `T_ε` over a small
/// trial family. Keys: `size`, `smooth_x`, `smooth_y`, `l2`, `samples`.
pub fn kernel_condition_check(
    kernel: &KernelSpec,
    space: &DiscreteMeasureSpace,
    sample_count: usize,
) -> Result<BTreeMap<String, f64>> {
    if sample_count < 100 {
        return Err(invalid("kernel condition check needs at least 100 samples"));
    }
    kernel.validate(space)?;
    let n = space.len();
    let a = kernel.alpha_smooth;
    let dim = kernel.n as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b65_726e);
    let mut smooth_x = 0.0f64;
    let mut smooth_y = 0.0f64;
    let mut taken = 0;
    let mut attempts = 0;
    while taken < sample_count && attempts < 200 * sample_count {
        attempts += 1;
        let x = rng.gen_range(0..n);
        let y = rng.gen_range(0..n);
        let xp = rng.gen_range(0..n);
        if x == y || xp == x || xp == y {
            continue;
        }
        let dxy = ambient(space, x, y);
        let dxx = ambient(space, x, xp);
        if !(dxx < 0.5 * dxy) {
            continue;
        }
        taken += 1;
        let scale = dxy.powf(dim + a) / dxx.powf(a);
        smooth_x = smooth_x.max((kernel.eval(space, xp, y) - kernel.eval(space, x, y)).norm() * scale);
        smooth_y = smooth_y.max((kernel.eval(space, y, xp) - kernel.eval(space, y, x)).norm() * scale);
    }
    let mut out = BTreeMap::new();
    out.insert("size".to_string(), size_constant(kernel, space));
    out.insert("smooth_x".to_string(), smooth_x);
    out.insert("smooth_y".to_string(), smooth_y);
    out.insert("samples".to_string(), taken as f64);
    out.insert("l2".to_string(), l2_estimate(kernel, space));
    Ok(out)
}

fn l2_estimate(kernel: &KernelSpec, space: &DiscreteMeasureSpace) -> f64 {
    let n = space.len();
    let l2 = |g: &[Complex64]| -> f64 {
        g.iter().zip(space.masses()).map(|(z, m)| z.norm_sqr() * m).sum::<f64>().sqrt()
    };
    let mut best = 0.0f64;
    for k in 0..8usize {
        let f: Vec<Complex64> = (0..n)
            .map(|i| {
                let u = space.normalized_position(i);
                match k {
                    0 => Complex64::new(1.0, 0.0),
                    1..=4 => Complex64::new((2.0 * PI * (1 << (k - 1)) as f64 * u).cos(), 0.0),
                    5 => Complex64::new(if u < 0.5 { 1.0 } else { 0.0 }, 0.0),
                    6 => Complex64::new(if (0.25..0.375).contains(&u) { 1.0 } else { 0.0 }, 0.0),
                    _ => Complex64::new((2.0 * PI * 7.0 * u).sin() * u, 0.0),
                }
            })
            .collect();
        let nf = l2(&f);
        if nf > 0.0 {
            best = best.max(l2(&apply_truncated(kernel, &f, space)) / nf);
        }
    }
    best
}

/// Commutator `[b, T]f = b·T_ε f − T_ε(b f)` and the discrete BMO seminorm
/// `sup_x M^# b(x)`.
pub fn commutator(
    b: &[f64],
    kernel: &KernelSpec,
    f: &[f64],
    space: &DiscreteMeasureSpace,
) -> Result<(ComplexGridFunction, f64)> {
    check_len(space.len(), b.len())?;
    check_len(space.len(), f.len())?;
    let fc: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let bf: Vec<Complex64> = f.iter().zip(b).map(|(&v, &w)| Complex64::new(v * w, 0.0)).collect();
    let tf = cz_apply(&fc, kernel, space)?.output;
    let tbf = cz_apply(&bf, kernel, space)?.output;
    let out: Vec<Complex64> = (0..space.len()).map(|i| b[i] * tf[i] - tbf[i]).collect();
    let bmo = sharp_maximal(b, space)?.iter().cloned().fold(0.0, f64::max);
    Ok((ComplexGridFunction::new(out)?, bmo))
}

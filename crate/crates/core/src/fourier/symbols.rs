use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, invalid, Error, Result};
use crate::space::{ComplexGridFunction, UniformGrid1D};

/// A Fourier multiplier symbol `m(ξ)` on the real line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolSpec {
    Constant { value: f64 },
    /// `−i sgn ξ` (zero at the origin).
    Conjugate,
    /// `χ_{ξ ≥ 0}`.
    RieszProjection,
    /// `ξ / (1 + |ξ|)`.
    Saturation,
    /// `|ξ|^{−α}` away from the origin, zero at it.
    FractionalPower { alpha: f64 },
    /// Samples interpolated linearly in `ξ`, constant beyond the ends.
    Tabulated {
        xi: Vec<f64>,
        re: Vec<f64>,
        #[serde(default)]
        im: Vec<f64>,
    },
}

impl SymbolSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SymbolSpec::Constant { value } if !value.is_finite() => Err(invalid("constant symbol must be finite")),
            SymbolSpec::FractionalPower { alpha } if !(*alpha > 0.0 && *alpha < 1.0) => {
                Err(invalid("fractional power must lie in (0, 1)"))
            }
            SymbolSpec::Tabulated { xi, re, im } => {
                if xi.len() < 2 || re.len() != xi.len() || !(im.is_empty() || im.len() == xi.len()) {
                    return Err(invalid("tabulated symbol needs matching xi/re/im columns of length >= 2"));
                }
                if xi.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(invalid("tabulated xi must be strictly increasing"));
                }
                if xi.iter().chain(re).chain(im).any(|v| !v.is_finite()) {
                    return Err(invalid("tabulated symbol must be finite"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        match self {
            SymbolSpec::Constant { value } => Complex64::new(*value, 0.0),
            SymbolSpec::Conjugate => Complex64::new(0.0, -xi.signum() * f64::from(u8::from(xi != 0.0))),
            SymbolSpec::RieszProjection => Complex64::new(if xi >= 0.0 { 1.0 } else { 0.0 }, 0.0),
            SymbolSpec::Saturation => Complex64::new(xi / (1.0 + xi.abs()), 0.0),
            SymbolSpec::FractionalPower { alpha } => {
                Complex64::new(if xi == 0.0 { 0.0 } else { xi.abs().powf(-alpha) }, 0.0)
            }
            SymbolSpec::Tabulated { xi: x, re, im } => {
                let n = x.len();
                let pick = |v: &Vec<f64>, k: usize, t: f64| if v.is_empty() { 0.0 } else { v[k] + t * (v[k + 1] - v[k]) };
                if xi <= x[0] {
                    return Complex64::new(re[0], if im.is_empty() { 0.0 } else { im[0] });
                }
                if xi >= x[n - 1] {
                    return Complex64::new(re[n - 1], if im.is_empty() { 0.0 } else { im[n - 1] });
                }
                let k = x.partition_point(|&v| v <= xi) - 1;
                let t = (xi - x[k]) / (x[k + 1] - x[k]);
                Complex64::new(pick(re, k, t), pick(im, k, t))
            }
        }
    }

    /// Reads rows `xi,re[,im]` with a header line.
    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut r = csv::Reader::from_path(path)?;
        let (mut xi, mut re, mut im) = (Vec::new(), Vec::new(), Vec::new());
        for (row, rec) in r.records().enumerate() {
            let rec = rec?;
            let parse = |i: usize| rec.get(i).map(|s| s.trim().parse::<f64>());
            match (parse(0), parse(1), parse(2)) {
                (Some(Ok(x)), Some(Ok(a)), third) => {
                    xi.push(x);
                    re.push(a);
                    match third {
                        Some(Ok(b)) => im.push(b),
                        None => {}
                        Some(Err(_)) => return Err(Error::Config(format!("{}: bad row {}", path.display(), row + 1))),
                    }
                }
                _ => return Err(Error::Config(format!("{}: bad row {}", path.display(), row + 1))),
            }
        }
        let spec = SymbolSpec::Tabulated { xi, re, im };
        spec.validate()?;
        Ok(spec)
    }
}

/// `T_m f` through the discrete transform pair of the grid: frequencies
/// `2πk/L` for `|k| ≤ (n−1)/2` with `L` the period (2π on the circle, the
/// interval length otherwise).
pub fn continuous_multiplier(m: &SymbolSpec, f: &[Complex64], grid: &UniformGrid1D) -> Result<ComplexGridFunction> {
    m.validate()?;
    check_len(grid.n, f.len())?;
    let n = grid.n;
    let kmax = ((n - 1) / 2) as i64;
    let period = grid.b - grid.a;
    let omega = 2.0 * PI / period;
    let phase: Vec<f64> = grid.nodes().iter().map(|&x| omega * (x - grid.a)).collect();
    let fhat: Vec<Complex64> = (-kmax..=kmax)
        .into_par_iter()
        .map(|k| {
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &t) in phase.iter().enumerate() {
                s += f[j] * Complex64::from_polar(1.0, -(k as f64) * t);
            }
            s / n as f64 * m.eval(k as f64 * omega)
        })
        .collect();
    let out: Vec<Complex64> = phase
        .par_iter()
        .map(|&t| {
            let mut s = Complex64::new(0.0, 0.0);
            for k in -kmax..=kmax {
                s += fhat[(k + kmax) as usize] * Complex64::from_polar(1.0, k as f64 * t);
            }
            s
        })
        .collect();
    ComplexGridFunction::new(out)
}

/// Sampled multiplier conditions on dyadic scales `2^j`, `j = −8..=16`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplierConditions {
    /// `sup |m|`.
    pub mikhlin_order0: f64,
    /// `sup |ξ||m′(ξ)|` away from the origin.
    pub mikhlin_order1: f64,
    pub mikhlin: f64,
    /// `sup_R (R ∫_{R<|ξ|<2R} |m′|²)^{1/2}`.
    pub hormander: f64,
    /// `(j, var over ±[2^j, 2^{j+1}])`, the larger of the two sides.
    pub variation: Vec<(i32, f64)>,
    pub variation_sup: f64,
}

const J_MIN: i32 = -8;
const J_MAX: i32 = 16;

/// Mikhlin, Hörmander and dyadic-variation diagnostics of a symbol.
pub fn multiplier_condition_report(m: &SymbolSpec) -> Result<MultiplierConditions> {
    m.validate()?;
    let deriv = |xi: f64| {
        let d = 1e-6 * xi.abs();
        (m.eval(xi + d) - m.eval(xi - d)).norm() / (2.0 * d)
    };
    let mut order0 = 0.0f64;
    let mut order1 = 0.0f64;
    let mut hormander = 0.0f64;
    let mut variation = Vec::new();
    for j in J_MIN..=J_MAX {
        let r = 2f64.powi(j);
        for i in 0..16 {
            let xi = r * 2f64.powf(i as f64 / 16.0);
            for s in [xi, -xi] {
                order0 = order0.max(m.eval(s).norm());
                order1 = order1.max(s.abs() * deriv(s));
            }
        }
        let mut integral = 0.0;
        for sub in 0..4 {
            let (lo, hi) = (r * (1.0 + sub as f64 / 4.0), r * (1.0 + (sub + 1) as f64 / 4.0));
            integral += crate::space::gauss_legendre(&|t| deriv(t).powi(2) + deriv(-t).powi(2), lo, hi);
        }
        hormander = hormander.max((r * integral).sqrt());
        let samples = 512;
        let var_side = |sign: f64| {
            let mut v = 0.0;
            let mut prev = m.eval(sign * r);
            for i in 1..=samples {
                let cur = m.eval(sign * r * (1.0 + i as f64 / samples as f64));
                v += (cur - prev).norm();
                prev = cur;
            }
            v
        };
        variation.push((j, var_side(1.0).max(var_side(-1.0))));
    }
    let variation_sup = variation.iter().fold(0.0f64, |a, v| a.max(v.1));
    Ok(MultiplierConditions {
        mikhlin_order0: order0,
        mikhlin_order1: order1,
        mikhlin: order0.max(order1),
        hormander,
        variation,
        variation_sup,
    })
}

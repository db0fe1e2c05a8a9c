//! Modular, Luxemburg norm, Hölder pairing and a dual-norm lower bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, invalid, Error, Result};
use crate::space::{dual_exponent, DiscreteMeasureSpace, GridFunction, VariableExponent};

/// Relative width at which bisection on λ stops.
pub const NORM_RTOL: f64 = 1e-12;

/// Constant used in the variable-exponent Hölder inequality.
pub const HOLDER_CONSTANT: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub value: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
    pub modular_at_value: f64,
}

fn check_inputs(f: &[f64], p: &[f64], rho: &[f64], space: &DiscreteMeasureSpace) -> Result<()> {
    check_len(space.len(), f.len())?;
    check_len(space.len(), p.len())?;
    check_len(space.len(), rho.len())?;
    if let Some(i) = f.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    if let Some(i) = rho.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(invalid(format!("weight must be positive and finite (point {i})")));
    }
    Ok(())
}

/// Precomputed logarithms for repeated modular evaluations.
struct LogTerms {
    /// `(p_i, ln|ρ_i f_i|, ln μ_i)` for the points where `ρf ≠ 0`.
    terms: Vec<(f64, f64, f64)>,
    sup: f64,
}

impl LogTerms {
    fn new(f: &[f64], p: &[f64], rho: &[f64], masses: &[f64]) -> Self {
        let mut terms = Vec::with_capacity(f.len());
        let mut sup = 0.0f64;
        for i in 0..f.len() {
            let g = (rho[i] * f[i]).abs();
            if g > 0.0 {
                sup = sup.max(g);
                terms.push((p[i], g.ln(), masses[i].ln()));
            }
        }
        LogTerms { terms, sup }
    }

    fn modular(&self, lambda: f64) -> f64 {
        let ll = lambda.ln();
        let mut s = 0.0;
        for &(p, lg, lm) in &self.terms {
            let e = p * (lg - ll) + lm;
            if e > 709.0 {
                return f64::INFINITY;
            }
            s += e.exp();
        }
        s
    }

    fn norm(&self) -> NormResult {
        if self.terms.is_empty() {
            return NormResult { value: 0.0, iterations: 0, bracket: (0.0, 0.0), modular_at_value: 0.0 };
        }
        let mut iterations = 0;
        let mut lo = self.sup;
        let mut hi = self.sup;
        if self.modular(hi) > 1.0 {
            while self.modular(hi) > 1.0 {
                lo = hi;
                hi *= 2.0;
                iterations += 1;
            }
        } else {
            while self.modular(lo) <= 1.0 {
                hi = lo;
                lo *= 0.5;
                iterations += 1;
            }
        }
        let bracket = (lo, hi);
        // invariant: modular(lo) > 1 >= modular(hi)
        while hi - lo > NORM_RTOL * hi {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.modular(mid) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            iterations += 1;
        }
        NormResult { value: hi, iterations, bracket, modular_at_value: self.modular(hi) }
    }
}

/// `Σ |ρ_i f_i / λ|^{p_i} μ_i`; `+∞` on overflow.
pub fn modular(
    f: &[f64],
    p: &VariableExponent,
    rho: &[f64],
    space: &DiscreteMeasureSpace,
    lambda: f64,
) -> Result<f64> {
    check_inputs(f, p.values(), rho, space)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(invalid("lambda must be positive"));
    }
    Ok(LogTerms::new(f, p.values(), rho, space.masses()).modular(lambda))
}

/// Weighted Luxemburg norm `inf{λ > 0 : modular(λ) ≤ 1}` by bracketing and bisection.
pub fn luxemburg_norm(
    f: &[f64],
    p: &VariableExponent,
    rho: &[f64],
    space: &DiscreteMeasureSpace,
) -> Result<NormResult> {
    luxemburg_norm_raw(f, p.values(), rho, space)
}

/// As [`luxemburg_norm`] for a raw exponent vector (entries must be `≥ 1`).
pub fn luxemburg_norm_raw(
    f: &[f64],
    p: &[f64],
    rho: &[f64],
    space: &DiscreteMeasureSpace,
) -> Result<NormResult> {
    check_inputs(f, p, rho, space)?;
    if let Some(i) = p.iter().position(|v| !(v.is_finite() && *v >= 1.0)) {
        return Err(Error::ExponentBounds(format!("exponent at point {i} is {}", p[i])));
    }
    Ok(LogTerms::new(f, p, rho, space.masses()).norm())
}

/// Weighted norm value without validation.
pub(crate) fn weighted_norm_value(f: &[f64], p: &[f64], rho: &[f64], space: &DiscreteMeasureSpace) -> f64 {
    LogTerms::new(f, p, rho, space.masses()).norm().value
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// `∫|fg| dμ` against `2‖ρf‖_{p(·)}‖g/ρ‖_{p′(·)}`.
pub fn verify_holder(
    f: &[f64],
    g: &[f64],
    p: &VariableExponent,
    rho: &[f64],
    space: &DiscreteMeasureSpace,
) -> Result<HolderCheck> {
    check_inputs(f, p.values(), rho, space)?;
    check_len(space.len(), g.len())?;
    if let Some(i) = g.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let fg: Vec<f64> = f.iter().zip(g).map(|(a, b)| (a * b).abs()).collect();
    let lhs = space.integrate(&fg);
    let pd = dual_exponent(p)?;
    let inv: Vec<f64> = rho.iter().map(|r| 1.0 / r).collect();
    let nf = luxemburg_norm(f, p, rho, space)?.value;
    let ng = luxemburg_norm(g, &pd, &inv, space)?.value;
    let rhs = HOLDER_CONSTANT * nf * ng;
    let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
    Ok(HolderCheck { lhs, rhs, ratio })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualEstimate {
    pub lower_bound: f64,
    pub best_h: GridFunction,
    pub best_index: usize,
}

/// Lower bound for `sup ∫ F h dμ` over `h ≥ 0` with `‖h/ρ‖_{q′(·)} = 1`.
///
/// Candidates, in order: the constant-exponent maximizer `ρ(ρF/‖ρF‖)^{q−1}`,
/// `F`, `ρ`, then seeded tent bumps around random centers. Only the first
/// `trial_count` candidates are tried, so the bound is monotone in
/// `trial_count` for a fixed seed.
pub fn dual_norm_estimate(
    big_f: &[f64],
    q: &VariableExponent,
    rho: &[f64],
    space: &DiscreteMeasureSpace,
    trial_count: usize,
    seed: u64,
) -> Result<DualEstimate> {
    if trial_count == 0 {
        return Err(invalid("trial_count must be positive"));
    }
    check_inputs(big_f, q.values(), rho, space)?;
    if big_f.iter().any(|&v| v < 0.0) {
        return Err(invalid("F must be nonnegative"));
    }
    let n = space.len();
    let qd = dual_exponent(q)?;
    let inv: Vec<f64> = rho.iter().map(|r| 1.0 / r).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bumps: Vec<(usize, f64)> = (3..trial_count)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0.02..0.5) * space.diameter()))
        .collect();

    let candidate = |k: usize| -> Vec<f64> {
        match k {
            0 => {
                let lam = weighted_norm_value(big_f, q.values(), rho, space);
                if lam == 0.0 {
                    return vec![0.0; n];
                }
                (0..n)
                    .map(|i| rho[i] * (rho[i] * big_f[i] / lam).powf(q.get(i) - 1.0))
                    .collect()
            }
            1 => big_f.to_vec(),
            2 => rho.to_vec(),
            _ => {
                let (c, r) = bumps[k - 3];
                (0..n).map(|i| rho[i] * (1.0 - space.dist(c, i) / r).max(0.0)).collect()
            }
        }
    };

    let scored: Vec<(f64, Vec<f64>)> = (0..trial_count)
        .into_par_iter()
        .map(|k| {
            let h = candidate(k);
            let nh = weighted_norm_value(&h, qd.values(), &inv, space);
            if nh == 0.0 {
                return (0.0, vec![0.0; n]);
            }
            let h: Vec<f64> = h.iter().map(|v| v / nh).collect();
            let val: f64 = (0..n).map(|i| big_f[i] * h[i] * space.mass(i)).sum();
            (val, h)
        })
        .collect();

    let mut best = 0;
    for k in 1..scored.len() {
        if scored[k].0 > scored[best].0 {
            best = k;
        }
    }
    let (lower_bound, h) = scored.into_iter().nth(best).unwrap_or((0.0, vec![0.0; n]));
    Ok(DualEstimate { lower_bound, best_h: GridFunction::from_vec(h), best_index: best })
}

use serde::{Deserialize, Serialize};

use crate::error::{check_len, invalid, Result};
use crate::operators::{maximal_of_nonneg, sweep};
use crate::space::{DiscreteMeasureSpace, VariableExponent};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuckenhouptReport {
    pub s: f64,
    /// Constant at the finest resolution.
    pub constant: f64,
    pub holds_estimate: bool,
    /// `(N, constant)` per resolution, coarse to fine.
    pub trend: Vec<(usize, f64)>,
}

/// Growth factor between successive resolutions tolerated by a "holds" verdict.
pub const STABLE_RATIO: f64 = 1.25;

/// `A_s` constant of `w` over all centered balls; for `s = 1` the constant is
/// `sup Mw / w`.
pub fn check_muckenhoupt(w: &[f64], s: f64, space: &DiscreteMeasureSpace) -> Result<MuckenhouptReport> {
    check_len(space.len(), w.len())?;
    if !(s >= 1.0) || !s.is_finite() {
        return Err(invalid("Muckenhoupt exponent must be at least 1"));
    }
    if let Some(i) = w.iter().position(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(invalid(format!("weight must be positive and finite (point {i})")));
    }
    let constant = if s == 1.0 {
        let mw = maximal_of_nonneg(w, space);
        mw.iter().zip(w).map(|(m, v)| m / v).fold(0.0, f64::max)
    } else {
        let dual: Vec<f64> = w.iter().map(|v| v.powf(-1.0 / (s - 1.0))).collect();
        ap_sup(w, &dual, 1.0, s - 1.0, space)
    };
    Ok(MuckenhouptReport { s, constant, holds_estimate: constant.is_finite(), trend: vec![(space.len(), constant)] })
}

/// `sup_B (avg_B a)^{ea} (avg_B b)^{eb}` over centered balls.
fn ap_sup(a: &[f64], b: &[f64], ea: f64, eb: f64, space: &DiscreteMeasureSpace) -> f64 {
    let masses = space.masses();
    sweep(space, |_, shells| {
        let (mut sa, mut sb, mut m) = (0.0, 0.0, 0.0);
        let mut best = 0.0f64;
        for k in 0..shells.len() {
            for &j in shells.members(k) {
                sa += a[j] * masses[j];
                sb += b[j] * masses[j];
                m += masses[j];
            }
            best = best.max((sa / m).powf(ea) * (sb / m).powf(eb));
        }
        best
    })
    .into_iter()
    .fold(0.0, f64::max)
}

/// Merges single-resolution reports (coarse to fine) into a trend verdict:
/// holds iff every successive constant grows by less than 25%.
pub fn muckenhoupt_trend(reports: &[MuckenhouptReport]) -> Result<MuckenhouptReport> {
    let first = reports.first().ok_or_else(|| invalid("no reports to merge"))?;
    let trend: Vec<(usize, f64)> = reports.iter().flat_map(|r| r.trend.iter().copied()).collect();
    let holds = trend.windows(2).all(|p| p[1].1 < STABLE_RATIO * p[0].1) && trend.iter().all(|t| t.1.is_finite());
    Ok(MuckenhouptReport {
        s: first.s,
        constant: trend.last().map(|t| t.1).unwrap_or(f64::NAN),
        holds_estimate: holds,
        trend,
    })
}

/// Checks `ρ^{p(·)} ∈ A_{p₋}`.
pub fn theorem_erz_condition(
    rho: &[f64],
    p: &VariableExponent,
    space: &DiscreteMeasureSpace,
) -> Result<MuckenhouptReport> {
    check_len(space.len(), rho.len())?;
    p.check_space(space)?;
    if p.min() <= 1.0 {
        return Err(invalid("p_- must exceed 1"));
    }
    let w: Vec<f64> = rho.iter().zip(p.values()).map(|(r, e)| r.powf(*e)).collect();
    check_muckenhoupt(&w, p.min(), space)
}

/// Checks `ρ^{q₁(·)} ∈ A_{q₊/q₀}` with `q₁ = q(q₊ − q₀)/(q − q₀)`.
pub fn remark_rem1_condition(
    rho: &[f64],
    q: &VariableExponent,
    q0: f64,
    space: &DiscreteMeasureSpace,
) -> Result<MuckenhouptReport> {
    check_len(space.len(), rho.len())?;
    q.check_space(space)?;
    if q.values().iter().any(|&v| v == q0) {
        return Err(invalid("q equals q0 at some point"));
    }
    if !(q0 > 0.0 && q0 < q.min()) {
        return Err(invalid("q0 must lie in (0, q_-)"));
    }
    let w: Vec<f64> = rho.iter().zip(rem1_exponent(q, q0)).map(|(r, e)| r.powf(e)).collect();
    check_muckenhoupt(&w, q.max() / q0, space)
}

/// Pointwise `q₁ = q(q₊ − q₀)/(q − q₀)`.
pub fn rem1_exponent(q: &VariableExponent, q0: f64) -> Vec<f64> {
    let qp = q.max();
    q.values().iter().map(|&v| v * (qp - q0) / (v - q0)).collect()
}

/// `sup_B (avg v^{q₀})^{1/q₀} (avg v^{−p₀′})^{1/p₀′}` over centered balls.
pub fn muckenhoupt_wheeden_constant(v: &[f64], p0: f64, q0: f64, space: &DiscreteMeasureSpace) -> Result<f64> {
    check_len(space.len(), v.len())?;
    if !(p0 > 1.0 && q0 >= p0) {
        return Err(invalid("need 1 < p0 <= q0"));
    }
    if v.iter().any(|x| !(*x > 0.0 && x.is_finite())) {
        return Err(invalid("weight must be positive and finite"));
    }
    let p0d = p0 / (p0 - 1.0);
    let a: Vec<f64> = v.iter().map(|x| x.powf(q0)).collect();
    let b: Vec<f64> = v.iter().map(|x| x.powf(-p0d)).collect();
    Ok(ap_sup(&a, &b, 1.0 / q0, 1.0 / p0d, space))
}

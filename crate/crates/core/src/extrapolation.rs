//! Rubio de Francia extrapolation: exponent transfer, the iteration `S`, its
//! three properties, the constant `C₀`, a numerical trace of the proof chain
//! and the admissible index windows for power-type weights.

use serde::{Deserialize, Serialize};

use crate::dims::DimensionBounds;
use crate::error::{check_len, invalid, Error, Result};
use crate::norms::{weighted_norm_value, HOLDER_CONSTANT};
use crate::operators::maximal_of_nonneg;
use crate::space::{dual_exponent, DiscreteMeasureSpace, GridFunction, Site, VariableExponent};

/// Checks `0 < p₀ ≤ q₀ < ∞`, `p₀ < p₋` and `1/p₀ − 1/p₊ < 1/q₀`.
pub fn check_admissibility(p: &VariableExponent, p0: f64, q0: f64) -> Result<()> {
    if !(p0 > 0.0 && p0 <= q0 && q0.is_finite()) {
        return Err(Error::Admissibility("0 < p0 <= q0 < inf"));
    }
    if !(p0 < p.min()) {
        return Err(Error::Admissibility("p0 < p_-"));
    }
    let top = p.tail().map_or(p.max(), |t| t.value.max(p.max()));
    if !(1.0 / p0 - 1.0 / top < 1.0 / q0) {
        return Err(Error::Admissibility("1/p0 - 1/p_+ < 1/q0"));
    }
    Ok(())
}

/// `1/q = 1/p − (1/p₀ − 1/q₀)` pointwise, tail included.
pub fn target_exponent(p: &VariableExponent, p0: f64, q0: f64) -> Result<VariableExponent> {
    check_admissibility(p, p0, q0)?;
    if p0 == q0 {
        return Ok(p.clone());
    }
    // q = p p0 q0 / (p0 q0 - p (q0 - p0)), the same map as 1/q = 1/p - γ with fewer roundings
    let (a, b) = (p0 * q0, q0 - p0);
    p.mapped(|v| v * a / (a - v * b))
}

/// Parameters of an extrapolation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtrapolationConfig {
    pub p0: f64,
    pub q0: f64,
    pub p: VariableExponent,
    pub rho: GridFunction,
    pub c0: f64,
    /// Number of maximal iterations in `S`; derived from `C₀` when absent.
    #[serde(default)]
    pub k_terms: Option<usize>,
}

impl ExtrapolationConfig {
    pub fn new(p: VariableExponent, rho: GridFunction, p0: f64, q0: f64, c0: f64) -> Result<Self> {
        let cfg = ExtrapolationConfig { p0, q0, p, rho, c0, k_terms: None };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        check_admissibility(&self.p, self.p0, self.q0)?;
        check_len(self.p.len(), self.rho.len())?;
        if !(self.c0 >= 1.0 && self.c0.is_finite()) {
            return Err(invalid("C0 must be at least 1"));
        }
        if self.rho.iter().any(|v| !(*v > 0.0)) {
            return Err(invalid("the weight must be positive"));
        }
        Ok(())
    }

    pub fn q(&self) -> Result<VariableExponent> {
        target_exponent(&self.p, self.p0, self.q0)
    }

    /// `p̃ = p/p₀`.
    pub fn p_tilde(&self) -> Result<VariableExponent> {
        self.p.divided(self.p0)
    }

    /// `q̃ = q/q₀`.
    pub fn q_tilde(&self) -> Result<VariableExponent> {
        self.q()?.divided(self.q0)
    }

    /// `ρ^{−q₀}`.
    pub fn rho_neg_q0(&self) -> Vec<f64> {
        self.rho.iter().map(|r| r.powf(-self.q0)).collect()
    }

    pub fn terms(&self) -> usize {
        self.k_terms.unwrap_or_else(|| default_terms(self.c0))
    }
}

/// Smallest `K` with `(2C₀)^{−K} · 2C₀/(2C₀ − 1) < 10⁻¹⁰`.
pub fn default_terms(c0: f64) -> usize {
    let r = 2.0 * c0;
    ((1e10 * r / (r - 1.0)).ln() / r.ln()).ceil() as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RdfResult {
    pub s_phi: GridFunction,
    /// Certified bound on the omitted terms, pointwise.
    pub tail_bound: f64,
    pub terms: usize,
}

/// `Sφ = Σ_{k=0}^{K−1} (2C₀)^{−k} M^k φ`.
pub fn rubio_de_francia(phi: &[f64], c0: f64, k_terms: Option<usize>, space: &DiscreteMeasureSpace) -> Result<RdfResult> {
    check_len(space.len(), phi.len())?;
    if !(c0 >= 1.0 && c0.is_finite()) {
        return Err(invalid("C0 must be at least 1"));
    }
    if let Some(i) = phi.iter().position(|v| !(*v >= 0.0 && v.is_finite())) {
        return Err(invalid(format!("phi must be non-negative and finite (point {i})")));
    }
    let k = k_terms.unwrap_or_else(|| default_terms(c0));
    let r = 2.0 * c0;
    let mut cur = phi.to_vec();
    let mut sum = phi.to_vec();
    let mut scale = 1.0;
    for _ in 1..k {
        cur = maximal_of_nonneg(&cur, space);
        scale /= r;
        for (s, c) in sum.iter_mut().zip(&cur) {
            *s += scale * c;
        }
    }
    let sup = phi.iter().fold(0.0f64, |m, v| m.max(*v));
    let tail_bound = sup * r.powi(-(k as i32)) * r / (r - 1.0);
    Ok(RdfResult { s_phi: GridFunction::new(sum)?, tail_bound, terms: k })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub holds: bool,
    /// Smallest `rhs − lhs` (pointwise properties) or `rhs − lhs` of the norms.
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RdfReport {
    /// `φ ≤ Sφ`.
    pub dominates: PropertyCheck,
    /// `‖ρ^{−q₀}Sφ‖ ≤ 2‖ρ^{−q₀}φ‖` in `L^{(q̃)′}`.
    pub norm_doubling: PropertyCheck,
    /// `M(Sφ) ≤ 2C₀ Sφ + tail`.
    pub a1: PropertyCheck,
    /// `sup M(Sφ)/Sφ`.
    pub a1_ratio: f64,
}

/// Checks the three properties of `S` for one `φ`.
pub fn verify_rdf_properties(
    phi: &[f64],
    rdf: &RdfResult,
    c0: f64,
    q_tilde_dual: &VariableExponent,
    rho_neg_q0: &[f64],
    space: &DiscreteMeasureSpace,
) -> Result<RdfReport> {
    check_len(space.len(), phi.len())?;
    check_len(space.len(), rho_neg_q0.len())?;
    q_tilde_dual.check_space(space)?;
    let s = &rdf.s_phi;
    let dom = phi.iter().zip(s.iter()).map(|(a, b)| b - a).fold(f64::INFINITY, f64::min);
    let lhs = weighted_norm_value(s, q_tilde_dual.values(), rho_neg_q0, space);
    let rhs = 2.0 * weighted_norm_value(phi, q_tilde_dual.values(), rho_neg_q0, space);
    let ms = maximal_of_nonneg(s, space);
    let scale = s.iter().fold(0.0f64, |m, v| m.max(*v));
    let mut a1_slack = f64::INFINITY;
    let mut a1_ratio = 0.0f64;
    for (m, v) in ms.iter().zip(s.iter()) {
        a1_slack = a1_slack.min(2.0 * c0 * v + rdf.tail_bound - m);
        if *v > 0.0 {
            a1_ratio = a1_ratio.max(m / v);
        }
    }
    Ok(RdfReport {
        dominates: PropertyCheck { holds: dom >= 0.0, slack: dom },
        norm_doubling: PropertyCheck { holds: lhs <= rhs * (1.0 + TRACE_TOL), slack: rhs - lhs },
        // rounding in the partial sums is measured against sup Sφ
        a1: PropertyCheck { holds: a1_slack >= -TRACE_TOL * scale, slack: a1_slack },
        a1_ratio,
    })
}

/// `safety · max_φ ‖ρ^{−q₀}Mφ‖/‖ρ^{−q₀}φ‖` in `L^{(q̃)′}` with `q̃ = q/q₀`,
/// floored at 1. Trials of zero norm are skipped.
pub fn estimate_c0(
    q: &VariableExponent,
    rho: &[f64],
    q0: f64,
    space: &DiscreteMeasureSpace,
    trials: &[Vec<f64>],
    safety: f64,
) -> Result<f64> {
    check_len(space.len(), rho.len())?;
    q.check_space(space)?;
    if trials.is_empty() {
        return Err(invalid("the trial family is empty"));
    }
    if !(safety >= 1.0) {
        return Err(invalid("safety factor must be at least 1"));
    }
    let exp = dual_exponent(&q.divided(q0)?)?;
    let w: Vec<f64> = rho.iter().map(|r| r.powf(-q0)).collect();
    let mut best: Option<f64> = None;
    for t in trials {
        check_len(space.len(), t.len())?;
        let abs: Vec<f64> = t.iter().map(|v| v.abs()).collect();
        let den = weighted_norm_value(&abs, exp.values(), &w, space);
        if den == 0.0 {
            continue;
        }
        let num = weighted_norm_value(&maximal_of_nonneg(&abs, space), exp.values(), &w, space);
        best = Some(best.map_or(num / den, |b: f64| b.max(num / den)));
    }
    let ratio = best.ok_or_else(|| invalid("every trial has zero norm"))?;
    Ok((safety * ratio).max(1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub id: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Relative slack `(rhs − lhs)/|rhs|`; for identities `−|lhs − rhs|/|rhs|`.
    pub slack: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub steps: Vec<TraceStep>,
    /// `‖f‖_{L^q_ρ} / ‖g‖_{L^p_ρ}`.
    pub final_ratio: f64,
    pub passes: bool,
}

/// Inequality steps pass with relative slack down to this value.
pub const TRACE_TOL: f64 = 1e-9;
/// Identity steps pass with relative error up to this value.
pub const IDENTITY_TOL: f64 = 1e-10;

fn rel(lhs: f64, rhs: f64) -> f64 {
    (rhs - lhs) / rhs.abs().max(lhs.abs()).max(f64::MIN_POSITIVE)
}

fn inequality(id: &str, lhs: f64, rhs: f64) -> TraceStep {
    let slack = rel(lhs, rhs);
    TraceStep { id: id.into(), lhs, rhs, slack, passed: slack >= -TRACE_TOL }
}

fn identity(id: &str, lhs: f64, rhs: f64) -> TraceStep {
    let slack = -rel(lhs, rhs).abs();
    TraceStep { id: id.into(), lhs, rhs, slack, passed: slack >= -IDENTITY_TOL }
}

/// Follows the extrapolation argument for one pair `(f, g)` and one test
/// function `h`, which is first normalized to `‖hρ^{−q₀}‖_{(q̃)′} = 1`.
///
/// Steps, in order: `domination` (`∫f^{q₀}h ≤ ∫f^{q₀}Sh`), `hypothesis`
/// (the claimed weighted inequality with `w = Sh` and constant `c₀`),
/// `holder`, `exponent_identity` (`‖ρ^{−p₀}(Sh)^{p₀/q₀}‖^{q₀/p₀}_{(p̃)′} =
/// ‖ρ^{−q₀}Sh‖_{(q̃)′}`) and `doubling` (`‖ρ^{−q₀}Sh‖_{(q̃)′} ≤ 2`).
pub fn trace_extrapolation(
    cfg: &ExtrapolationConfig,
    f: &[f64],
    g: &[f64],
    h: &[f64],
    c0_claim: f64,
    space: &DiscreteMeasureSpace,
) -> Result<ProofTrace> {
    cfg.validate()?;
    for v in [f, g, h] {
        check_len(space.len(), v.len())?;
    }
    cfg.p.check_space(space)?;
    if f.iter().chain(g).chain(h).any(|v| !(*v >= 0.0 && v.is_finite())) {
        return Err(invalid("f, g and h must be non-negative and finite"));
    }
    let (p0, q0) = (cfg.p0, cfg.q0);
    let q = cfg.q()?;
    let q_dual = dual_exponent(&q.divided(q0)?)?;
    let p_dual = dual_exponent(&cfg.p_tilde()?)?;
    let w_q = cfg.rho_neg_q0();
    let h_norm = weighted_norm_value(h, q_dual.values(), &w_q, space);
    if !(h_norm > 0.0 && h_norm.is_finite()) {
        return Err(invalid("h cannot be normalized"));
    }
    let h: Vec<f64> = h.iter().map(|v| v / h_norm).collect();
    let sh = rubio_de_francia(&h, cfg.c0, cfg.k_terms, space)?.s_phi;

    let fq: Vec<f64> = f.iter().map(|v| v.powf(q0)).collect();
    let int = |a: &[f64], b: &[f64]| space.integrate(&a.iter().zip(b).map(|(x, y)| x * y).collect::<Vec<_>>());
    let lhs = int(&fq, &h);
    let mid = int(&fq, &sh);
    let gp: Vec<f64> = g.iter().map(|v| v.powf(p0)).collect();
    let sh_pq: Vec<f64> = sh.iter().map(|v| v.powf(p0 / q0)).collect();
    let inner = int(&gp, &sh_pq);
    let hyp_rhs = c0_claim.powf(q0) * inner.powf(q0 / p0);

    let rho = cfg.rho.values();
    let rg: Vec<f64> = rho.iter().zip(g).map(|(r, v)| (r * v).powf(p0)).collect();
    let p_tilde = cfg.p_tilde()?;
    let ones = vec![1.0; space.len()];
    let norm_gp = weighted_norm_value(&rg, p_tilde.values(), &ones, space);
    let w_p: Vec<f64> = rho.iter().map(|r| r.powf(-p0)).collect();
    let norm_shp = weighted_norm_value(&sh_pq, p_dual.values(), &w_p, space);
    let holder_rhs = HOLDER_CONSTANT * norm_gp * norm_shp;

    let norm_shq = weighted_norm_value(&sh, q_dual.values(), &w_q, space);

    let steps = vec![
        inequality("domination", lhs, mid),
        inequality("hypothesis", mid, hyp_rhs),
        inequality("holder", inner, holder_rhs),
        identity("exponent_identity", norm_shp.powf(q0 / p0), norm_shq),
        inequality("doubling", norm_shq, 2.0),
    ];
    let nf = weighted_norm_value(f, q.values(), rho, space);
    let ng = weighted_norm_value(g, cfg.p.values(), rho, space);
    let final_ratio = if ng > 0.0 { nf / ng } else if nf == 0.0 { 0.0 } else { f64::INFINITY };
    let passes = steps.iter().all(|s| s.passed);
    Ok(ProofTrace { steps, final_ratio, passes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowMode {
    /// The hypothesis is known for one `p₀`.
    PartI,
    /// The hypothesis holds for every `p₀ ∈ (1, p₋)`.
    PartII,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lower: f64,
    pub upper: f64,
    pub empty: bool,
}

impl Window {
    fn new(lower: f64, upper: f64) -> Self {
        Window { lower, upper, empty: !(lower < upper) }
    }

    pub fn contains(&self, m: f64, big_m: f64) -> bool {
        self.lower < m && m <= big_m && big_m < self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightWindows {
    pub gamma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// One open interval for `(m(w_k), M(w_k))` per anchor.
    pub anchors: Vec<Window>,
    /// Interval for the sums of the indices over all factors, `k = 0..N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sum: Option<Window>,
}

/// Admissible index intervals for the weight factors with `γ = 1/p₀ − 1/q₀`.
pub fn weight_window(
    p: &VariableExponent,
    dims: &DimensionBounds,
    p0: f64,
    q0: f64,
    mode: WindowMode,
    sites: &[Site],
    space: &DiscreteMeasureSpace,
) -> Result<WeightWindows> {
    check_admissibility(p, p0, q0)?;
    p.check_space(space)?;
    let gamma = 1.0 / p0 - 1.0 / q0;
    let d = dims.dim_lower;
    let dual_term = match mode {
        WindowMode::PartI => 1.0 - 1.0 / p0,
        WindowMode::PartII => 0.0,
    };
    let mut anchors = Vec::with_capacity(sites.len());
    for &s in sites {
        let pk = p.get(space.nearest_point(s)?);
        anchors.push(Window::new((gamma - 1.0 / pk) * d, (1.0 - 1.0 / pk - dual_term) * d));
    }
    let (mut delta, mut sum) = (None, None);
    if space.truncation().is_some() {
        let p_inf = p
            .tail()
            .ok_or_else(|| Error::Config("an unbounded model needs the exponent at infinity".into()))?
            .value;
        let (lo, hi) = match (dims.dim_inf_lower, dims.dim_inf_upper) {
            (Some(l), Some(u)) => (l, u),
            _ => return Err(Error::Config("an unbounded model needs dimension bounds at infinity".into())),
        };
        let base = match mode {
            WindowMode::PartI => p0,
            WindowMode::PartII => p.min(),
        };
        let dl = (hi - lo) * (1.0 / base - 1.0 / p_inf);
        delta = Some(dl);
        sum = Some(Window::new(dl + (gamma - 1.0 / p_inf) * d, (1.0 - 1.0 / p_inf - dual_term) * d));
    }
    Ok(WeightWindows { gamma, delta, anchors, sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{build_circle_grid, build_interval_grid};

    #[test]
    fn exponent_transfer() {
        let g = build_interval_grid(0.0, 1.0, 16).unwrap();
        let p = VariableExponent::constant(&g, 2.0).unwrap();
        let q = target_exponent(&p, 1.5, 3.0).unwrap();
        assert!(q.values().iter().all(|&v| v == 6.0), "{:?}", q.values());
        assert_eq!(target_exponent(&p, 1.5, 1.5).unwrap(), p);
        let p = VariableExponent::from_coords(&g, |x| 2.0 + x).unwrap();
        let q = target_exponent(&p, 1.5, 3.0).unwrap();
        let expect = 1.0 / (1.0 / p.get(15) - 1.0 / 3.0);
        assert!((q.get(15) - expect).abs() < 1e-12);
        assert!(matches!(target_exponent(&p, 2.5, 3.0), Err(Error::Admissibility("p0 < p_-"))));
        assert!(matches!(target_exponent(&p, 1.5, 1.0), Err(Error::Admissibility(_))));
        let p = VariableExponent::constant(&g, 2.0).unwrap();
        assert!(matches!(target_exponent(&p, 1.5, 7.0), Err(Error::Admissibility("1/p0 - 1/p_+ < 1/q0"))));
    }

    #[test]
    fn rdf_constants() {
        let g = build_interval_grid(0.0, 1.0, 64).unwrap();
        let r = rubio_de_francia(&vec![1.0; 64], 1.0, None, &g).unwrap();
        assert!(r.s_phi.iter().all(|v| (v - 2.0).abs() < 1e-10));
        assert!(r.tail_bound < 1e-10);
        let r = rubio_de_francia(&vec![3.0; 64], 2.0, None, &g).unwrap();
        assert!(r.s_phi.iter().all(|v| (v - 3.0 * 4.0 / 3.0).abs() < 1e-9));
        let ind: Vec<f64> = (0..64).map(|i| if (20..30).contains(&i) { 1.0 } else { 0.0 }).collect();
        let a = rubio_de_francia(&ind, 1.0, Some(40), &g).unwrap();
        let b = rubio_de_francia(&ind, 1.0, Some(60), &g).unwrap();
        assert!(a.s_phi.iter().zip(b.s_phi.iter()).all(|(x, y)| (x - y).abs() < 1e-10));
        assert!(rubio_de_francia(&vec![-1.0; 64], 1.0, None, &g).is_err());
        assert_eq!(default_terms(1.0), 35);
    }

    #[test]
    fn properties_hold() {
        let g = build_interval_grid(0.0, 1.0, 128).unwrap();
        let q = VariableExponent::constant(&g, 2.0).unwrap();
        let rho = vec![1.0; 128];
        let trials: Vec<Vec<f64>> = (0..20)
            .map(|k| (0..128).map(|i| (-(((i as f64) - 6.0 * k as f64) / 4.0).powi(2)).exp()).collect())
            .collect();
        let c0 = estimate_c0(&q, &rho, 1.0, &g, &trials, 1.5).unwrap();
        assert!(c0 >= 1.5 && c0 <= 6.0, "{c0}");
        assert_eq!(estimate_c0(&q, &rho, 1.0, &g, &[vec![1.0; 128]], 1.5).unwrap(), 1.5);
        let dual = dual_exponent(&q.divided(1.0).unwrap()).unwrap();
        for t in &trials {
            let r = rubio_de_francia(t, c0, None, &g).unwrap();
            let rep = verify_rdf_properties(t, &r, c0, &dual, &rho, &g).unwrap();
            assert!(rep.dominates.holds && rep.norm_doubling.holds && rep.a1.holds, "{rep:?}");
            assert!(rep.a1_ratio >= 1.0);
        }
    }

    #[test]
    fn identity_trace_and_falsification() {
        let g = build_interval_grid(0.0, 1.0, 128).unwrap();
        let p = VariableExponent::from_coords(&g, |x| 2.0 + 0.5 * x).unwrap();
        let rho = GridFunction::from_coords(&g, |x| (x - 0.5).abs().max(1e-3).powf(0.2)).unwrap();
        let cfg = ExtrapolationConfig::new(p, rho, 1.5, 1.5, 2.0).unwrap();
        let f: Vec<f64> = g.nodes().iter().map(|x| 1.0 + (6.0 * x).sin().abs()).collect();
        let h: Vec<f64> = g.nodes().iter().map(|x| (-(x - 0.3).powi(2) * 40.0).exp()).collect();
        let t = trace_extrapolation(&cfg, &f, &f, &h, 1.0, &g).unwrap();
        assert!(t.passes, "{t:?}");
        assert!((t.final_ratio - 1.0).abs() < 1e-10);
        let bad = trace_extrapolation(&cfg, &f, &f, &h, 0.5, &g).unwrap();
        let failed: Vec<&str> = bad.steps.iter().filter(|s| !s.passed).map(|s| s.id.as_str()).collect();
        assert_eq!(failed, ["hypothesis"]);
    }

    #[test]
    fn exponent_identity_off_diagonal() {
        let g = build_interval_grid(0.0, 1.0, 64).unwrap();
        let p = VariableExponent::constant(&g, 2.0).unwrap();
        let cfg = ExtrapolationConfig::new(p, GridFunction::constant(&g, 1.0), 1.5, 3.0, 2.0).unwrap();
        let f: Vec<f64> = g.nodes().iter().map(|x| 1.0 + x).collect();
        let t = trace_extrapolation(&cfg, &f, &f, &vec![1.0; 64], 10.0, &g).unwrap();
        let step = t.steps.iter().find(|s| s.id == "exponent_identity").unwrap();
        assert!(step.passed && step.slack.abs() < 1e-10, "{step:?}");
    }

    #[test]
    fn windows() {
        let c = build_circle_grid(16).unwrap();
        let p = VariableExponent::constant(&c, 2.0).unwrap();
        let dims = DimensionBounds::constant(1.0);
        let w = weight_window(&p, &dims, 1.2, 2.4, WindowMode::PartII, &[Site::Point(0)], &c).unwrap();
        assert!((w.gamma - (1.0 / 1.2 - 1.0 / 2.4)).abs() < 1e-15);
        let a = &w.anchors[0];
        assert!((a.lower - (w.gamma - 0.5)).abs() < 1e-15 && (a.upper - 0.5).abs() < 1e-15);
        let w = weight_window(&p, &dims, 1.5, 1.5, WindowMode::PartII, &[Site::Point(0)], &c).unwrap();
        assert_eq!((w.anchors[0].lower, w.anchors[0].upper), (-0.5, 0.5));
        let w = weight_window(&p, &dims, 1.5, 2.0, WindowMode::PartI, &[Site::Point(0)], &c).unwrap();
        assert!((w.anchors[0].upper - 1.0 / 6.0).abs() < 1e-15);
        assert!((w.anchors[0].lower - (w.gamma - 0.5)).abs() < 1e-15);
    }
}

use serde::{Deserialize, Serialize};

use super::indices::{mo_indices, mo_indices_infinity, IndexGrid};
use super::{Factor, WeightSpec};
use crate::dims::DimensionBounds;
use crate::error::{invalid, Error, Result};
use crate::space::{dual_exponent, DiscreteMeasureSpace, VariableExponent};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub member: bool,
    /// Smallest slack over all inequalities; positive iff member.
    pub margin: f64,
    pub violations: Vec<String>,
    /// Estimates that did not pass their convergence check.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unconverged: Vec<String>,
}

struct Slack {
    margin: f64,
    violations: Vec<String>,
    unconverged: Vec<String>,
}

impl Slack {
    fn new() -> Self {
        Slack { margin: f64::INFINITY, violations: Vec::new(), unconverged: Vec::new() }
    }

    /// Records `lo < lower_value` and `upper_value < hi`.
    fn window(&mut self, label: &str, lo: f64, lower_value: f64, upper_value: f64, hi: f64) {
        let (a, b) = (lower_value - lo, hi - upper_value);
        self.margin = self.margin.min(a).min(b);
        if !(a > 0.0) {
            self.violations.push(format!("{label}: {lower_value} is not above {lo}"));
        }
        if !(b > 0.0) {
            self.violations.push(format!("{label}: {upper_value} is not below {hi}"));
        }
    }

    fn report(self) -> ClassReport {
        ClassReport {
            member: self.violations.is_empty(),
            margin: self.margin,
            violations: self.violations,
            unconverged: self.unconverged,
        }
    }
}

fn anchor_exponent(space: &DiscreteMeasureSpace, p: &VariableExponent, site: crate::space::Site) -> Result<f64> {
    Ok(p.get(space.nearest_point(site)?))
}

struct InfinityData {
    p_inf: f64,
    lower: f64,
    upper: f64,
}

fn infinity_data(p: &VariableExponent, dims: &DimensionBounds, space: &DiscreteMeasureSpace) -> Result<Option<InfinityData>> {
    if space.truncation().is_none() {
        return Ok(None);
    }
    let tail = p
        .tail()
        .ok_or_else(|| Error::Config("an unbounded model needs the exponent at infinity".into()))?;
    let (lower, upper) = match (dims.dim_inf_lower, dims.dim_inf_upper) {
        (Some(l), Some(u)) => (l, u),
        _ => return Err(Error::Config("an unbounded model needs dimension bounds at infinity".into())),
    };
    Ok(Some(InfinityData { p_inf: tail.value, lower, upper }))
}

/// Membership of a power weight in the class `V`: each exponent lies in
/// `(−dim/p(x_k), dim/p′(x_k))`, and on truncated unbounded models the sum
/// of all exponents lies in `(−dim∞/p∞, dim∞ − dim̄∞/p∞)`.
pub fn check_v_class(
    spec: &WeightSpec,
    p: &VariableExponent,
    dims: &DimensionBounds,
    space: &DiscreteMeasureSpace,
) -> Result<ClassReport> {
    spec.validate()?;
    p.check_space(space)?;
    let beta_of = |f: &Factor| f.power_exponent().ok_or_else(|| invalid("the class V takes power factors only"));
    let d = dims.dim_lower;
    let mut slack = Slack::new();
    let mut sum = 0.0;
    for (k, a) in spec.anchors.iter().enumerate() {
        let beta = beta_of(&a.factor)?;
        let pk = anchor_exponent(space, p, a.site)?;
        slack.window(&format!("anchor {k}"), -d / pk, beta, beta, d * (1.0 - 1.0 / pk));
        sum += beta;
    }
    if let Some(inf) = &spec.infinity {
        sum += beta_of(&inf.factor)?;
    }
    if let Some(data) = infinity_data(p, dims, space)? {
        let lo = -data.lower / data.p_inf;
        let hi = data.lower - data.upper / data.p_inf;
        slack.window("exponent sum at infinity", lo, sum, sum, hi);
    }
    Ok(slack.report())
}

/// Membership in the class `V^osc`: the indices of each factor lie in
/// `(−dim/p(x_k), dim/p′(x_k))`, and on truncated unbounded models the sums
/// of the indices at infinity over all factors lie in
/// `(−dim∞/p∞, dim∞/p∞′ − Δ)` with `Δ = (dim̄∞ − dim∞)/p∞`.
pub fn check_v_osc_class(
    spec: &WeightSpec,
    p: &VariableExponent,
    dims: &DimensionBounds,
    space: &DiscreteMeasureSpace,
) -> Result<ClassReport> {
    spec.validate()?;
    p.check_space(space)?;
    let grid = IndexGrid::default();
    let d = dims.dim_lower;
    let mut slack = Slack::new();
    for (k, a) in spec.anchors.iter().enumerate() {
        let idx = mo_indices(&a.factor, &grid)?;
        if !idx.converged {
            slack.unconverged.push(format!("indices of anchor {k}"));
        }
        let pk = anchor_exponent(space, p, a.site)?;
        slack.window(&format!("anchor {k}"), -d / pk, idx.lower, idx.upper, d * (1.0 - 1.0 / pk));
    }
    if let Some(data) = infinity_data(p, dims, space)? {
        let factors = spec.anchors.iter().map(|a| &a.factor).chain(spec.infinity.iter().map(|i| &i.factor));
        let (mut lower, mut upper) = (0.0, 0.0);
        for (k, f) in factors.enumerate() {
            let idx = mo_indices_infinity(f, &grid)?;
            if !idx.converged {
                slack.unconverged.push(format!("indices at infinity of factor {k}"));
            }
            lower += idx.lower;
            upper += idx.upper;
        }
        let delta = (data.upper - data.lower) / data.p_inf;
        let lo = -data.lower / data.p_inf;
        let hi = data.lower * (1.0 - 1.0 / data.p_inf) - delta;
        slack.window("index sums at infinity", lo, lower, upper, hi);
    }
    Ok(slack.report())
}

/// The pair `(ρ^{−p₀}, (p/p₀)′)`.
pub fn remark_transform(spec: &WeightSpec, p: &VariableExponent, p0: f64) -> Result<(WeightSpec, VariableExponent)> {
    if !(p0 > 1.0 && p0 < p.min()) {
        return Err(invalid("p0 must lie in (1, p_-)"));
    }
    Ok((spec.powered(-p0), dual_exponent(&p.divided(p0)?)?))
}

/// Largest `p₀` for which a member of `V` keeps membership under
/// [`remark_transform`].
///
/// The transformed window for an exponent `β` is `(−dim/p, dim(1/p₀ − 1/p))`,
/// which is narrower than the original upper bound `dim/p′` whenever
/// `p₀ > 1`; membership survives iff `p₀ < 1/(β/dim + 1/p)` for every
/// positive `β` (and the same with the exponent sum at infinity).
pub fn remark_p0_limit(
    spec: &WeightSpec,
    p: &VariableExponent,
    dims: &DimensionBounds,
    space: &DiscreteMeasureSpace,
) -> Result<f64> {
    p.check_space(space)?;
    let limit = |beta: f64, d: f64, pk: f64| if beta > 0.0 { 1.0 / (beta / d + 1.0 / pk) } else { f64::INFINITY };
    let mut best = p.min();
    let mut sum = 0.0;
    for a in &spec.anchors {
        let beta = a.factor.power_exponent().ok_or_else(|| invalid("the class V takes power factors only"))?;
        best = best.min(limit(beta, dims.dim_lower, anchor_exponent(space, p, a.site)?));
        sum += beta;
    }
    if let Some(inf) = &spec.infinity {
        sum += inf.factor.power_exponent().ok_or_else(|| invalid("the class V takes power factors only"))?;
    }
    if let Some(data) = infinity_data(p, dims, space)? {
        best = best.min(limit(sum, data.lower, data.p_inf));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{build_circle_grid, build_interval_grid, Site};

    #[test]
    fn circle_power_window() {
        let c = build_circle_grid(64).unwrap();
        let p = VariableExponent::constant(&c, 2.0).unwrap();
        let dims = DimensionBounds::constant(1.0);
        let check = |beta| check_v_class(&WeightSpec::power(Site::Point(0), beta), &p, &dims, &c).unwrap();
        assert!(check(0.4).member);
        assert!(!check(0.6).member);
        let zero = check(0.0);
        assert!(zero.member && (zero.margin - 0.5).abs() < 1e-15);
        let log = WeightSpec::single(Site::Point(0), Factor::PowerLog { beta: 0.3, gamma: 1.0 });
        assert!(check_v_class(&log, &p, &dims, &c).is_err());
    }

    #[test]
    fn oscillating_class() {
        let c = build_circle_grid(64).unwrap();
        let p = VariableExponent::constant(&c, 2.0).unwrap();
        let dims = DimensionBounds::constant(1.0);
        let log = WeightSpec::single(Site::Point(0), Factor::PowerLog { beta: 0.3, gamma: 1.0 });
        let r = check_v_osc_class(&log, &p, &dims, &c).unwrap();
        assert!(r.member && r.unconverged.is_empty(), "{r:?}");
        let neg = WeightSpec::power(Site::Point(0), -0.6);
        assert!(!check_v_osc_class(&neg, &p, &dims, &c).unwrap().member);
    }

    #[test]
    fn unbounded_sum_condition() {
        let g = build_interval_grid(-64.0, 64.0, 256).unwrap().into_space().with_truncation(64.0);
        let dims = DimensionBounds::constant(1.0);
        let bare = VariableExponent::constant(&g, 2.0).unwrap();
        let spec = WeightSpec::power(Site::At(0.0), 0.2);
        assert!(matches!(check_v_class(&spec, &bare, &dims, &g), Err(Error::Config(_))));
        let p = bare.with_tail(&g, 2.0, 1.0, 128).unwrap();
        assert!(check_v_osc_class(&spec, &p, &dims, &g).unwrap().member);
        assert!(check_v_class(&spec, &p, &dims, &g).unwrap().member);
        let heavy = spec.clone().with_infinity(Site::At(0.0), Factor::Power { beta: 0.4 });
        let r = check_v_class(&heavy, &p, &dims, &g).unwrap();
        assert!(!r.member && r.violations.len() == 1, "{r:?}");
    }

    #[test]
    fn transform_limit() {
        let c = build_circle_grid(64).unwrap();
        let p = VariableExponent::constant(&c, 3.0).unwrap();
        let dims = DimensionBounds::constant(1.0);
        let spec = WeightSpec::power(Site::Point(0), 0.5);
        let limit = remark_p0_limit(&spec, &p, &dims, &c).unwrap();
        assert!((limit - 1.2).abs() < 1e-12);
        let (t, q) = remark_transform(&spec, &p, 1.1).unwrap();
        assert!(check_v_class(&t, &q, &dims, &c).unwrap().member);
        let (t, q) = remark_transform(&spec, &p, 1.5).unwrap();
        assert!(!check_v_class(&t, &q, &dims, &c).unwrap().member);
        assert!(remark_transform(&spec, &p, 3.0).is_err());
    }
}

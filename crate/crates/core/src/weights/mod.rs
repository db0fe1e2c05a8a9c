//! Power and oscillating weights, Matuszewska–Orlicz indices, the
//! Zygmund–Bary–Stechkin class, Muckenhoupt constants and the admissibility
//! classes of weights for variable exponents.

mod classes;
mod indices;
mod muckenhoupt;
mod zbs;

pub use classes::{check_v_class, check_v_osc_class, remark_p0_limit, remark_transform, ClassReport};
pub use indices::{mo_indices, mo_indices_infinity, IndexEstimate, IndexGrid, WeightIndices};
pub use muckenhoupt::{
    check_muckenhoupt, muckenhoupt_trend, muckenhoupt_wheeden_constant, remark_rem1_condition,
    theorem_erz_condition, MuckenhouptReport,
};
pub use zbs::{check_zbs, ZbsReport};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::space::{DiscreteMeasureSpace, GridFunction, Site};

/// Radial factor `w(t)` of a weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factor {
    /// `t^β`
    Power { beta: f64 },
    /// `t^β (1 + |ln t|)^γ`
    PowerLog { beta: f64, gamma: f64 },
    /// Samples `(t_i, w_i)` with `t` increasing, interpolated linearly in
    /// `(ln t, ln w)` and extended by the end slopes.
    Tabulated { t: Vec<f64>, w: Vec<f64> },
}

impl Factor {
    pub fn validate(&self) -> Result<()> {
        match self {
            Factor::Power { beta } if !beta.is_finite() => Err(invalid("power exponent must be finite")),
            Factor::PowerLog { beta, gamma } if !beta.is_finite() || !gamma.is_finite() => {
                Err(invalid("power-log exponents must be finite"))
            }
            Factor::Tabulated { t, w } => {
                if t.len() < 2 || t.len() != w.len() {
                    return Err(invalid("tabulated factor needs at least two (t, w) pairs of equal length"));
                }
                if t.iter().any(|&v| !(v > 0.0 && v.is_finite())) || w.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
                    return Err(invalid("tabulated factor must be positive and finite"));
                }
                if t.windows(2).any(|p| p[1] <= p[0]) {
                    return Err(invalid("tabulated t must be strictly increasing"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `ln w(t)` for `ln t`, valid far beyond the range of `f64` for `t`.
    pub fn ln_eval(&self, ln_t: f64) -> f64 {
        match self {
            Factor::Power { beta } => beta * ln_t,
            Factor::PowerLog { beta, gamma } => beta * ln_t + gamma * (1.0 + ln_t.abs()).ln(),
            Factor::Tabulated { t, w } => {
                let n = t.len();
                let lt = |i: usize| t[i].ln();
                let lw = |i: usize| w[i].ln();
                let k = if ln_t <= lt(0) {
                    0
                } else if ln_t >= lt(n - 1) {
                    n - 2
                } else {
                    t.partition_point(|&v| v.ln() <= ln_t).saturating_sub(1).min(n - 2)
                };
                let slope = (lw(k + 1) - lw(k)) / (lt(k + 1) - lt(k));
                lw(k) + slope * (ln_t - lt(k))
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.ln_eval(t.ln()).exp()
    }

    /// The factor raised to the power `s`.
    pub fn powered(&self, s: f64) -> Factor {
        match self {
            Factor::Power { beta } => Factor::Power { beta: s * beta },
            Factor::PowerLog { beta, gamma } => Factor::PowerLog { beta: s * beta, gamma: s * gamma },
            Factor::Tabulated { t, w } => Factor::Tabulated { t: t.clone(), w: w.iter().map(|v| v.powf(s)).collect() },
        }
    }

    pub fn power_exponent(&self) -> Option<f64> {
        match self {
            Factor::Power { beta } => Some(*beta),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    #[serde(flatten)]
    pub site: Site,
    pub factor: Factor,
}

/// Factor applied to `1 + d(x₀, x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfinityFactor {
    #[serde(flatten)]
    pub origin: Site,
    pub factor: Factor,
}

/// `ρ(x) = w₀(1 + d(x₀, x)) Π_k w_k(d(x, x_k))`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub anchors: Vec<Anchor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinity: Option<InfinityFactor>,
}

impl WeightSpec {
    pub fn unweighted() -> Self {
        WeightSpec::default()
    }

    /// Single power factor `d(x, site)^β`.
    pub fn power(site: Site, beta: f64) -> Self {
        WeightSpec { anchors: vec![Anchor { site, factor: Factor::Power { beta } }], infinity: None }
    }

    pub fn single(site: Site, factor: Factor) -> Self {
        WeightSpec { anchors: vec![Anchor { site, factor }], infinity: None }
    }

    pub fn with_anchor(mut self, site: Site, factor: Factor) -> Self {
        self.anchors.push(Anchor { site, factor });
        self
    }

    pub fn with_infinity(mut self, origin: Site, factor: Factor) -> Self {
        self.infinity = Some(InfinityFactor { origin, factor });
        self
    }

    /// The weight `ρ^s`.
    pub fn powered(&self, s: f64) -> WeightSpec {
        WeightSpec {
            anchors: self
                .anchors
                .iter()
                .map(|a| Anchor { site: a.site, factor: a.factor.powered(s) })
                .collect(),
            infinity: self
                .infinity
                .as_ref()
                .map(|i| InfinityFactor { origin: i.origin, factor: i.factor.powered(s) }),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.anchors.iter().enumerate() {
            a.factor.validate()?;
            for b in &self.anchors[..i] {
                if a.site == b.site {
                    return Err(invalid("weight anchors must be distinct"));
                }
            }
        }
        if let Some(inf) = &self.infinity {
            inf.factor.validate()?;
        }
        Ok(())
    }
}

/// Samples `ρ` on the space. A distance below `ε` (half the minimal spacing,
/// so in particular the anchor itself) is replaced by `ε`.
pub fn eval_weight(spec: &WeightSpec, space: &DiscreteMeasureSpace) -> Result<GridFunction> {
    spec.validate()?;
    let eps = space.epsilon_min();
    let mut ln_rho = vec![0.0; space.len()];
    for a in &spec.anchors {
        for (i, v) in ln_rho.iter_mut().enumerate() {
            let d = space.distance_to_site(i, a.site)?.max(eps);
            *v += a.factor.ln_eval(d.ln());
        }
    }
    if let Some(inf) = &spec.infinity {
        for (i, v) in ln_rho.iter_mut().enumerate() {
            let d = space.distance_to_site(i, inf.origin)?;
            *v += inf.factor.ln_eval((1.0 + d).ln());
        }
    }
    GridFunction::new(ln_rho.into_iter().map(f64::exp).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::build_interval_grid;

    #[test]
    fn trivial_and_power() {
        let g = build_interval_grid(-1.0, 1.0, 64).unwrap();
        let one = eval_weight(&WeightSpec::power(Site::At(0.0), 0.0), &g).unwrap();
        assert!(one.iter().all(|&v| v == 1.0));
        let w = eval_weight(&WeightSpec::power(Site::At(0.0), 1.0), &g).unwrap();
        for (i, x) in g.nodes().iter().enumerate() {
            assert!((w[i] - x.abs().max(g.h / 2.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn product_matches_hand_evaluation() {
        let g = build_interval_grid(-1.0, 1.0, 40).unwrap();
        let spec = WeightSpec::single(Site::At(0.0), Factor::Power { beta: 0.5 });
        let spec = WeightSpec {
            anchors: vec![
                spec.anchors[0].clone(),
                Anchor { site: Site::Point(39), factor: Factor::PowerLog { beta: 0.0, gamma: 1.0 } },
            ],
            infinity: None,
        };
        let w = eval_weight(&spec, &g).unwrap();
        for i in [0usize, 7, 19, 20, 33] {
            let x = g.node(i);
            let d2 = (x - g.node(39)).abs().max(g.h / 2.0);
            let expected = x.abs().sqrt() * (1.0 + d2.ln().abs());
            assert!((w[i] - expected).abs() < 1e-13 * expected);
        }
    }

    #[test]
    fn json_shape() {
        let s: WeightSpec =
            serde_json::from_str(r#"{"anchors":[{"point":3,"factor":{"kind":"power","beta":0.3}}]}"#).unwrap();
        assert_eq!(s, WeightSpec::power(Site::Point(3), 0.3));
        let back = serde_json::to_string(&s).unwrap();
        assert_eq!(back, r#"{"anchors":[{"point":3,"factor":{"kind":"power","beta":0.3}}]}"#);
        let dup = WeightSpec::power(Site::Point(1), 0.1).with_anchor(Site::Point(1), Factor::Power { beta: 0.2 });
        assert!(dup.validate().is_err());
    }

    #[test]
    fn tabulated_interpolates_power() {
        let t: Vec<f64> = (0..10).map(|k| 2f64.powi(-k)).rev().collect();
        let w: Vec<f64> = t.iter().map(|v| v.powf(0.7)).collect();
        let f = Factor::Tabulated { t, w };
        f.validate().unwrap();
        for x in [1e-6, 0.01, 0.3, 5.0] {
            assert!((f.eval(x) / x.powf(0.7) - 1.0).abs() < 1e-12);
        }
    }
}

use serde::{Deserialize, Serialize};

use super::DiscreteMeasureSpace;
use crate::error::{Error, Result};

/// Constant behaviour of an exponent outside a ball.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentTail {
    pub value: f64,
    pub radius: f64,
    pub origin: usize,
}

/// A pointwise exponent `p(·)` with `1 < p₋ ≤ p₊ < ∞`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariableExponent {
    values: Vec<f64>,
    min: f64,
    max: f64,
    tail: Option<ExponentTail>,
}

impl VariableExponent {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ExponentBounds("empty exponent".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if min <= 1.0 {
            return Err(Error::ExponentBounds(format!("p_- = {min} must exceed 1")));
        }
        Ok(VariableExponent { values, min, max, tail: None })
    }

    pub fn constant(space: &DiscreteMeasureSpace, p: f64) -> Result<Self> {
        Self::new(vec![p; space.len()])
    }

    pub fn from_fn(space: &DiscreteMeasureSpace, f: impl FnMut(usize) -> f64) -> Result<Self> {
        Self::new((0..space.len()).map(f).collect())
    }

    /// Samples `p` at the coordinates of a one-dimensional space.
    pub fn from_coords(space: &DiscreteMeasureSpace, f: impl Fn(f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(space.len());
        for i in 0..space.len() {
            let x = space
                .coord(i)
                .ok_or_else(|| Error::UnsupportedSpace("space has no coordinates".into()))?;
            values.push(f(x));
        }
        Self::new(values)
    }

    /// Declares `p = value` outside `B(origin, radius)`; every such sample must
    /// already equal `value`.
    pub fn with_tail(mut self, space: &DiscreteMeasureSpace, value: f64, radius: f64, origin: usize) -> Result<Self> {
        crate::error::check_len(space.len(), self.values.len())?;
        if !(value > 1.0 && value.is_finite()) {
            return Err(Error::ExponentBounds(format!("tail exponent {value} must lie in (1, inf)")));
        }
        for (i, &p) in self.values.iter().enumerate() {
            if space.dist(origin, i) > radius && p != value {
                return Err(Error::ExponentBounds(format!(
                    "p at point {i} is {p}, beyond the tail radius it must equal {value}"
                )));
            }
        }
        self.tail = Some(ExponentTail { value, radius, origin });
        Ok(self)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// `p₋`
    pub fn min(&self) -> f64 {
        self.min
    }

    /// `p₊`
    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn tail(&self) -> Option<ExponentTail> {
        self.tail
    }

    pub fn is_constant(&self) -> bool {
        self.min == self.max
    }

    pub fn check_space(&self, space: &DiscreteMeasureSpace) -> Result<()> {
        crate::error::check_len(space.len(), self.values.len())
    }

    /// `p / c` as an exponent, tail included; fails when `p₋ / c ≤ 1`.
    pub fn divided(&self, c: f64) -> Result<VariableExponent> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::ExponentBounds(format!("divisor {c} must be positive")));
        }
        let mut out = VariableExponent::new(self.scaled(c))?;
        out.tail = self.tail.map(|t| ExponentTail { value: t.value / c, ..t });
        if let Some(t) = out.tail {
            if !(t.value > 1.0) {
                return Err(Error::ExponentBounds(format!("tail exponent {} must exceed 1", t.value)));
            }
        }
        Ok(out)
    }

    /// Pointwise `q` with `1/q = 1/p − α/n`, tail included; needs `α p₊ < n`.
    pub fn sobolev(&self, alpha: f64, dim: f64) -> Result<VariableExponent> {
        if !(alpha > 0.0 && dim > 0.0) {
            return Err(Error::ExponentBounds("alpha and the dimension must be positive".into()));
        }
        let map = |p: f64| 1.0 / (1.0 / p - alpha / dim);
        let top = self.tail.map_or(self.max, |t| t.value.max(self.max));
        if !(alpha * top < dim) {
            return Err(Error::ExponentBounds(format!("alpha * p_+ = {} must stay below {dim}", alpha * top)));
        }
        self.mapped(map)
    }

    /// Applies `map` to every value and to the tail.
    pub(crate) fn mapped(&self, map: impl Fn(f64) -> f64) -> Result<VariableExponent> {
        let mut out = VariableExponent::new(self.values.iter().map(|&p| map(p)).collect())?;
        out.tail = self.tail.map(|t| ExponentTail { value: map(t.value), ..t });
        Ok(out)
    }

    /// Pointwise `p / c`; may leave the admissible range, so it is returned raw.
    pub fn scaled(&self, c: f64) -> Vec<f64> {
        self.values.iter().map(|p| p / c).collect()
    }
}

/// Pointwise conjugate exponent `p′ = p / (p − 1)`.
pub fn dual_exponent(p: &VariableExponent) -> Result<VariableExponent> {
    let values = p.values.iter().map(|&v| v / (v - 1.0)).collect();
    let mut dual = VariableExponent::new(values)?;
    dual.tail = p.tail.map(|t| ExponentTail { value: t.value / (t.value - 1.0), ..t });
    Ok(dual)
}

/// Result of [`check_weak_lipschitz`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakLipschitz {
    /// Always true on a finite space; the refinement trend carries the verdict.
    pub holds: bool,
    pub best_a: f64,
}

/// `max |p(x) − p(y)| · ln(1/d(x, y))` over pairs with `0 < d(x, y) ≤ ½`.
pub fn check_weak_lipschitz(p: &VariableExponent, space: &DiscreteMeasureSpace) -> Result<WeakLipschitz> {
    p.check_space(space)?;
    let n = space.len();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = space.dist(i, j);
            if d > 0.0 && d <= 0.5 {
                best = best.max((p.values[i] - p.values[j]).abs() * (1.0 / d).ln());
            }
        }
    }
    Ok(WeakLipschitz { holds: best.is_finite(), best_a: best })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrendVerdict {
    Holds,
    Fails,
    Inconclusive,
}

/// Weak-Lipschitz constants across refinements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakLipschitzTrend {
    pub constants: Vec<(usize, f64)>,
    pub growth: f64,
    pub verdict: TrendVerdict,
}

/// Verdict over `(n, best_A)` pairs ordered by resolution: the constant must
/// stay within 25% of its coarsest value.
pub fn weak_lipschitz_trend(constants: &[(usize, f64)]) -> WeakLipschitzTrend {
    if constants.len() < 2 {
        return WeakLipschitzTrend { constants: constants.to_vec(), growth: 0.0, verdict: TrendVerdict::Inconclusive };
    }
    let first = constants[0].1;
    let peak = constants.iter().map(|c| c.1).fold(first, f64::max);
    let growth = if first > 0.0 {
        peak / first - 1.0
    } else if peak > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    let verdict = if growth < 0.25 { TrendVerdict::Holds } else { TrendVerdict::Fails };
    WeakLipschitzTrend { constants: constants.to_vec(), growth, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::build_interval_grid;

    #[test]
    fn bounds_enforced() {
        assert!(VariableExponent::new(vec![2.0, 1.0]).is_err());
        assert!(VariableExponent::new(vec![2.0, f64::INFINITY]).is_err());
        assert!(VariableExponent::new(vec![]).is_err());
        let p = VariableExponent::new(vec![3.0, 1.5]).unwrap();
        assert_eq!((p.min(), p.max()), (1.5, 3.0));
    }

    #[test]
    fn dual_values_and_involution() {
        let g = build_interval_grid(0.0, 1.0, 64).unwrap();
        let two = VariableExponent::constant(&g, 2.0).unwrap();
        assert!(dual_exponent(&two).unwrap().values().iter().all(|&v| v == 2.0));
        let p = VariableExponent::constant(&g, 4.0 / 3.0).unwrap();
        assert!(dual_exponent(&p).unwrap().values().iter().all(|&v| (v - 4.0).abs() < 1e-14));
        let q = VariableExponent::new(vec![3.0]).unwrap();
        assert_eq!(dual_exponent(&q).unwrap().get(0), 1.5);
        let p = VariableExponent::from_coords(&g, |x| 2.0 + x).unwrap();
        let back = dual_exponent(&dual_exponent(&p).unwrap()).unwrap();
        for (a, b) in p.values().iter().zip(back.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn tail_checked() {
        let g = build_interval_grid(0.0, 4.0, 8).unwrap();
        let p = VariableExponent::from_coords(&g, |x| if x < 2.0 { 2.0 + x / 4.0 } else { 3.0 }).unwrap();
        assert!(p.clone().with_tail(&g, 3.0, 1.6, 0).is_ok());
        assert!(p.with_tail(&g, 3.0, 1.0, 0).is_err());
    }

    #[test]
    fn weak_lipschitz_examples() {
        let g = build_interval_grid(0.0, 1.0, 256).unwrap();
        let c = VariableExponent::constant(&g, 2.0).unwrap();
        assert_eq!(check_weak_lipschitz(&c, &g).unwrap().best_a, 0.0);
        let p = VariableExponent::from_coords(&g, |x| 2.0 + x).unwrap();
        let a = check_weak_lipschitz(&p, &g).unwrap().best_a;
        assert!((a - (-1.0f64).exp()).abs() < 1e-4);
    }

    #[test]
    fn step_exponent_fails_under_refinement() {
        let mut consts = Vec::new();
        for n in [64, 256, 1024] {
            let g = build_interval_grid(0.0, 1.0, n).unwrap();
            let p = VariableExponent::from_coords(&g, |x| if x < 0.5 { 2.0 } else { 3.0 }).unwrap();
            consts.push((n, check_weak_lipschitz(&p, &g).unwrap().best_a));
        }
        assert!((consts[2].1 - 1024f64.ln()).abs() < 1e-9);
        assert_eq!(weak_lipschitz_trend(&consts).verdict, TrendVerdict::Fails);
    }
}

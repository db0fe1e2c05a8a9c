//! Doubling constants, the ball-scaling functions `μ₀` and `μ∞`, and local
//! lower and upper dimensions.
//!
//! Limits in `h` are tail estimates on geometric radius grids. For a ratio
//! `r` the grid indexes the inner radius `s = min(h, rh)`, so the pairs of
//! balls compared for `r` and `1/r` coincide and `μ₀(x, 1/r)` is the
//! reciprocal of the smallest ratio seen for `r`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::operators::sweep;
use crate::space::DiscreteMeasureSpace;

/// Ratio used for the dimension limits (`r = 1/8` and `r = 8`).
pub const DIM_RATIO: f64 = 8.0;
/// Second ratio for the convergence check.
pub const DIM_RATIO_CHECK: f64 = 16.0;
/// Agreement required between the two ratios.
pub const DIM_TOL: f64 = 1e-2;
const PER_OCTAVE: usize = 8;

/// Interpolated ball measure `r ↦ μB(x, r)` around one point.
///
/// Knots sit midway between consecutive shell radii, carrying the measure of
/// the open ball there; the profile is linear between knots and starts at
/// `(0, 0)`. On uniform grids this is exact at every knot.
#[derive(Clone, Debug)]
pub struct BallProfile {
    radii: Vec<f64>,
    measures: Vec<f64>,
}

impl BallProfile {
    pub fn new(space: &DiscreteMeasureSpace, x: usize) -> Result<Self> {
        if x >= space.len() {
            return Err(invalid(format!("point {x} outside space of {} points", space.len())));
        }
        Ok(Self::from_shells(space, &space.shells(x)))
    }

    fn from_shells(space: &DiscreteMeasureSpace, shells: &crate::space::Shells) -> Self {
        let masses = space.masses();
        let mut radii = vec![0.0];
        let mut measures = vec![0.0];
        let mut acc = 0.0;
        let last = shells.len() - 1;
        for k in 0..shells.len() {
            acc += shells.members(k).iter().map(|&j| masses[j]).sum::<f64>();
            let r = if k < last {
                0.5 * (shells.radii[k] + shells.radii[k + 1])
            } else if k > 0 {
                shells.radii[k] + 0.5 * (shells.radii[k] - shells.radii[k - 1])
            } else {
                space.min_spacing()
            };
            radii.push(r);
            measures.push(acc);
        }
        BallProfile { radii, measures }
    }

    pub fn measure(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let n = self.radii.len();
        if r >= self.radii[n - 1] {
            return self.measures[n - 1];
        }
        let k = self.radii.partition_point(|&v| v <= r);
        let (r0, r1) = (self.radii[k - 1], self.radii[k]);
        let (m0, m1) = (self.measures[k - 1], self.measures[k]);
        m0 + (m1 - m0) * (r - r0) / (r1 - r0)
    }

    /// `μB(x, rs)/μB(x, s)` or its reciprocal pair, maximized over the tail.
    fn mu(&self, r: f64, grid: &ScaleGrid) -> f64 {
        grid.tail()
            .iter()
            .map(|&s| if r >= 1.0 { self.measure(r * s) / self.measure(s) } else { self.measure(s) / self.measure(s / r) })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest `μB(x, rs)/μB(x, s)` over the tail, `r > 1`.
    fn min_ratio(&self, r: f64, grid: &ScaleGrid) -> f64 {
        grid.tail().iter().map(|&s| self.measure(r * s) / self.measure(s)).fold(f64::INFINITY, f64::min)
    }
}

/// Geometric grid of inner radii, ordered toward the limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleGrid {
    pub radii: Vec<f64>,
    /// The usable range was empty and the grid fell back to a single radius.
    pub exhausted: bool,
}

impl ScaleGrid {
    fn geometric(from: f64, to: f64) -> ScaleGrid {
        let octaves = (to / from).log2().abs();
        let count = (octaves * PER_OCTAVE as f64).round() as usize;
        let radii = (0..=count)
            .map(|k| if count == 0 { from } else { from * (to / from).powf(k as f64 / count as f64) })
            .collect();
        ScaleGrid { radii, exhausted: false }
    }

    /// Radii from `diameter/64` down to four times the minimal spacing, so that
    /// balls up to `16s` stay within a quarter of the diameter.
    pub fn near_zero(space: &DiscreteMeasureSpace) -> ScaleGrid {
        let top = space.diameter() / (4.0 * DIM_RATIO_CHECK);
        let floor = 4.0 * space.min_spacing();
        if floor > top {
            return ScaleGrid { radii: vec![top], exhausted: true };
        }
        Self::geometric(top, floor)
    }

    /// The largest radii of a truncated unbounded model, from `diameter/512`
    /// up to `diameter/64`.
    pub fn near_infinity(space: &DiscreteMeasureSpace) -> Result<ScaleGrid> {
        if space.truncation().is_none() {
            return Err(invalid("scales near infinity need a space flagged as a truncation"));
        }
        let top = space.diameter() / (4.0 * DIM_RATIO_CHECK);
        let floor = top / 8.0;
        let mut g = Self::geometric(floor, top);
        g.exhausted = floor < 4.0 * space.min_spacing();
        Ok(g)
    }

    /// Last quarter of the radii.
    pub fn tail(&self) -> &[f64] {
        let n = self.radii.len();
        &self.radii[n - n.div_ceil(4)..]
    }
}

/// `lim sup_{h→0} μB(x, rh)/μB(x, h)`.
pub fn mu0(space: &DiscreteMeasureSpace, x: usize, r: f64, grid: &ScaleGrid) -> Result<f64> {
    check_ratio(r)?;
    Ok(BallProfile::new(space, x)?.mu(r, grid))
}

/// `lim sup_{h→∞} μB(x, rh)/μB(x, h)` on a truncated model.
pub fn mu_infinity(space: &DiscreteMeasureSpace, x: usize, r: f64) -> Result<f64> {
    check_ratio(r)?;
    let grid = ScaleGrid::near_infinity(space)?;
    Ok(BallProfile::new(space, x)?.mu(r, &grid))
}

fn check_ratio(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(invalid("scale ratio must be positive and finite"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalDims {
    pub lower: f64,
    pub upper: f64,
    pub converged: bool,
}

fn dims_from_profile(profile: &BallProfile, grid: &ScaleGrid) -> LocalDims {
    let at = |r: f64| {
        let lower = profile.min_ratio(r, grid).ln() / r.ln();
        let upper = profile.mu(r, grid).ln() / r.ln();
        (lower, upper)
    };
    let (lo, up) = at(DIM_RATIO);
    let (lo2, up2) = at(DIM_RATIO_CHECK);
    LocalDims {
        lower: lo,
        upper: up,
        converged: !grid.exhausted && (lo - lo2).abs() < DIM_TOL && (up - up2).abs() < DIM_TOL,
    }
}

/// Lower and upper local dimensions at a point, read at `r = 1/8` and `r = 8`.
pub fn local_dims(space: &DiscreteMeasureSpace, x: usize) -> Result<LocalDims> {
    let grid = ScaleGrid::near_zero(space);
    Ok(dims_from_profile(&BallProfile::new(space, x)?, &grid))
}

/// The lower dimension in its two equivalent forms: the supremum over
/// `r > 1` of `ln(lim inf μB(x,rh)/μB(x,h))/ln r`, and the supremum over
/// `r < 1` of `ln μ₀(x,r)/ln r`, both over `r = 2^{±k}`, `k = 1..4`.
pub fn lower_dim_forms(space: &DiscreteMeasureSpace, x: usize) -> Result<(f64, f64)> {
    let grid = ScaleGrid::near_zero(space);
    let profile = BallProfile::new(space, x)?;
    let mut above = f64::NEG_INFINITY;
    let mut below = f64::NEG_INFINITY;
    for k in 1..=4 {
        let r = 2f64.powi(k);
        above = above.max(profile.min_ratio(r, &grid).ln() / r.ln());
        below = below.max(profile.mu(1.0 / r, &grid).ln() / (1.0 / r).ln());
    }
    Ok((above, below))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoublingEstimate {
    #[serde(rename = "C")]
    pub c: f64,
    pub worst_point: usize,
    pub worst_radius: f64,
}

/// `max μB(x,2r)/μB(x,r)` over every point and sampled radius.
///
/// Radii are the midpoints between consecutive distances from `x` up to half
/// the diameter; above 512 points they are the midpoints nearest to 64
/// log-spaced targets.
pub fn doubling_constant(space: &DiscreteMeasureSpace) -> DoublingEstimate {
    let masses = space.masses();
    let half = 0.5 * space.diameter();
    // 2r may land exactly on a shell radius; keep that shell outside the open ball
    let tol = 1e-12 * space.diameter();
    let targets: Option<Vec<f64>> = (space.len() > 512).then(|| {
        let lo = space.min_spacing();
        (0..64).map(|k| lo * (half / lo).powf(k as f64 / 63.0)).collect()
    });
    let per_point = sweep(space, |x, shells| {
        let mut prefix = Vec::with_capacity(shells.len());
        let mut acc = 0.0;
        for k in 0..shells.len() {
            acc += shells.members(k).iter().map(|&j| masses[j]).sum::<f64>();
            prefix.push(acc);
        }
        let mids: Vec<f64> = shells
            .radii
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]))
            .take_while(|&r| r <= half)
            .collect();
        let ratio = |r: f64| {
            let inner = prefix[shells.count_below(r) - 1];
            let outer = prefix[shells.count_below(2.0 * r - tol) - 1];
            outer / inner
        };
        let mut best = (1.0f64, x, 0.0f64);
        let mut consider = |r: f64| {
            let q = ratio(r);
            if q > best.0 {
                best = (q, x, r);
            }
        };
        match &targets {
            None => mids.iter().for_each(|&r| consider(r)),
            Some(ts) if !mids.is_empty() => {
                let mut last = usize::MAX;
                for &t in ts {
                    let k = mids.partition_point(|&m| m < t);
                    let k = if k == mids.len() || (k > 0 && t - mids[k - 1] <= mids[k] - t) { k - 1 } else { k };
                    if k != last {
                        consider(mids[k]);
                        last = k;
                    }
                }
            }
            _ => {}
        }
        best
    });
    let (c, worst_point, worst_radius) = per_point
        .into_iter()
        .fold((1.0, 0, 0.0), |acc, b| if b.0 > acc.0 { b } else { acc });
    DoublingEstimate { c, worst_point, worst_radius }
}

/// Dimension bounds over a set of points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionBounds {
    /// Infimum of the lower local dimensions.
    pub dim_lower: f64,
    /// Supremum of the upper local dimensions.
    pub dim_upper: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_inf_lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_inf_upper: Option<f64>,
    /// `point → (lower, upper)`.
    #[serde(default)]
    pub per_point: BTreeMap<usize, (f64, f64)>,
    pub converged: bool,
    #[serde(default)]
    pub converged_inf: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<f64>,
}

impl DimensionBounds {
    /// Bounds of a space with constant dimension `s`, also at infinity.
    pub fn constant(s: f64) -> Self {
        DimensionBounds {
            dim_lower: s,
            dim_upper: s,
            dim_inf_lower: Some(s),
            dim_inf_upper: Some(s),
            per_point: BTreeMap::new(),
            converged: true,
            converged_inf: true,
            truncation: None,
        }
    }
}

/// Dimension bounds over `omega`. On truncated models the bounds at infinity
/// are read at the most central point (smallest eccentricity), since the
/// limit `h → ∞` does not depend on the point.
pub fn dim_bounds(space: &DiscreteMeasureSpace, omega: &[usize]) -> Result<DimensionBounds> {
    if omega.is_empty() {
        return Err(invalid("the point set must be nonempty"));
    }
    if let Some(&bad) = omega.iter().find(|&&x| x >= space.len()) {
        return Err(invalid(format!("point {bad} outside space of {} points", space.len())));
    }
    let grid = ScaleGrid::near_zero(space);
    let per: Vec<(usize, LocalDims)> = omega
        .par_iter()
        .map(|&x| (x, dims_from_profile(&BallProfile::from_shells(space, &space.shells(x)), &grid)))
        .collect();
    let dim_lower = per.iter().map(|p| p.1.lower).fold(f64::INFINITY, f64::min);
    let dim_upper = per.iter().map(|p| p.1.upper).fold(f64::NEG_INFINITY, f64::max);
    let converged = per.iter().all(|p| p.1.converged);
    let mut bounds = DimensionBounds {
        dim_lower,
        dim_upper,
        dim_inf_lower: None,
        dim_inf_upper: None,
        per_point: per.iter().map(|(x, d)| (*x, (d.lower, d.upper))).collect(),
        converged,
        converged_inf: false,
        truncation: space.truncation(),
    };
    if space.truncation().is_some() {
        let center = central_point(space);
        let g = ScaleGrid::near_infinity(space)?;
        let d = dims_from_profile(&BallProfile::new(space, center)?, &g);
        bounds.dim_inf_lower = Some(d.lower);
        bounds.dim_inf_upper = Some(d.upper);
        bounds.converged_inf = d.converged;
    }
    if !(bounds.dim_lower > 0.0 && bounds.dim_lower.is_finite()) {
        return Err(Error::UnsupportedSpace(format!("lower dimension {} is not in (0, ∞)", bounds.dim_lower)));
    }
    Ok(bounds)
}

/// Point of smallest eccentricity, lowest index on ties.
pub fn central_point(space: &DiscreteMeasureSpace) -> usize {
    let ecc: Vec<f64> = (0..space.len())
        .into_par_iter()
        .map(|i| (0..space.len()).map(|j| space.dist(i, j)).fold(0.0, f64::max))
        .collect();
    let mut best = 0;
    for (i, &e) in ecc.iter().enumerate() {
        if e < ecc[best] {
            best = i;
        }
    }
    best
}

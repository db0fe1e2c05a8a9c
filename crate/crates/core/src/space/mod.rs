//! Discretized measure spaces.
//!
//! A [`DiscreteMeasureSpace`] is a finite set of points `0..N` carrying a
//! quasimetric and strictly positive point masses. Every integral, ball and
//! supremum over balls in the crate is computed through it. Built-in spaces
//! (midpoint grids on intervals and circles, planar Carleson curves) evaluate
//! distances analytically; custom spaces carry a dense distance matrix.
//!
//! Balls are open: `B(x, r) = { y : d(x, y) < r }`.

mod curve;
mod custom;
mod exponent;
mod function;
mod grid;

pub use curve::{build_carleson_curve, CurveKind};
pub use custom::CustomSpaceFile;
pub use exponent::{
    check_weak_lipschitz, dual_exponent, weak_lipschitz_trend, ExponentTail, TrendVerdict,
    VariableExponent, WeakLipschitz, WeakLipschitzTrend,
};
pub use function::{ComplexGridFunction, GridFunction};
pub use grid::{build_circle_grid, build_interval_grid, UniformGrid1D};
pub(crate) use grid::gauss_legendre;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Distance evaluator backing a space.
#[derive(Clone, Debug)]
pub(crate) enum Metric {
    /// Midpoint grid on an interval, `d(i, j) = h·|i − j|`.
    UniformLine { a: f64, h: f64 },
    /// Midpoint grid on the circle of length `2π`, arc distance.
    UniformCircle { h: f64 },
    /// Arbitrary sorted coordinates on the line.
    Line { coords: Vec<f64> },
    /// Points in the plane with chordal distance. Tangents are unit vectors.
    Planar {
        points: Vec<Complex64>,
        tangents: Vec<Complex64>,
    },
    /// Row-major `N × N` matrix.
    Dense { distances: Vec<f64> },
}

/// A location used to anchor weights: either a point of the space or a
/// coordinate on a one-dimensional space (angle on the circle).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Site {
    Point(usize),
    At(f64),
}

/// Result of [`ball`].
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub indices: Vec<usize>,
    pub measure: f64,
}

/// Points around a center grouped by distance, nearest first.
///
/// Shell `s` holds `order[ends[s-1]..ends[s]]`, all at distance `radii[s]`.
/// Shell 0 is the center itself. The open ball `B(center, r)` is the union of
/// the shells with `radii[s] < r`, so every distinct ball around the center is
/// a prefix `order[..ends[s]]`.
#[derive(Clone, Debug)]
pub struct Shells {
    pub order: Vec<usize>,
    pub ends: Vec<usize>,
    pub radii: Vec<f64>,
}

impl Shells {
    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn members(&self, shell: usize) -> &[usize] {
        let start = if shell == 0 { 0 } else { self.ends[shell - 1] };
        &self.order[start..self.ends[shell]]
    }

    /// Number of shells whose radius is strictly below `r`.
    pub fn count_below(&self, r: f64) -> usize {
        self.radii.partition_point(|&d| d < r)
    }
}

/// A finite quasimetric measure space.
#[derive(Clone, Debug)]
pub struct DiscreteMeasureSpace {
    metric: Metric,
    masses: Vec<f64>,
    kappa: f64,
    diameter: f64,
    min_spacing: f64,
    periodic: bool,
    truncation: Option<f64>,
}

impl DiscreteMeasureSpace {
    pub(crate) fn from_parts(metric: Metric, masses: Vec<f64>, kappa: f64, periodic: bool) -> Result<Self> {
        let n = masses.len();
        if n < 2 {
            return Err(invalid("a space needs at least two points"));
        }
        for (i, &m) in masses.iter().enumerate() {
            if !m.is_finite() {
                return Err(Error::NonFinite(i));
            }
            if m <= 0.0 {
                return Err(invalid(format!("mass at point {i} is not positive")));
            }
        }
        let mut space = DiscreteMeasureSpace {
            metric,
            masses,
            kappa,
            diameter: 0.0,
            min_spacing: 0.0,
            periodic,
            truncation: None,
        };
        let (diameter, min_spacing) = space.extent();
        if min_spacing <= 0.0 {
            return Err(invalid("distinct points at zero distance"));
        }
        space.diameter = diameter;
        space.min_spacing = min_spacing;
        Ok(space)
    }

    fn extent(&self) -> (f64, f64) {
        let n = self.len();
        match &self.metric {
            Metric::UniformLine { h, .. } => ((n - 1) as f64 * h, *h),
            Metric::UniformCircle { h } => ((n / 2) as f64 * h, *h),
            Metric::Line { coords } => {
                let spacing = coords
                    .windows(2)
                    .map(|w| w[1] - w[0])
                    .fold(f64::INFINITY, f64::min);
                (coords[n - 1] - coords[0], spacing)
            }
            _ => {
                let mut diam = 0.0f64;
                let mut spacing = f64::INFINITY;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let d = self.dist(i, j);
                        diam = diam.max(d);
                        spacing = spacing.min(d);
                    }
                }
                (diam, spacing)
            }
        }
    }

    /// Points on the line at the given strictly increasing coordinates.
    pub fn line(coords: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        crate::error::check_len(coords.len(), masses.len())?;
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("non-finite coordinate"));
        }
        if coords.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("coordinates must be strictly increasing"));
        }
        Self::from_parts(Metric::Line { coords }, masses, 1.0, false)
    }

    /// A custom space from a dense row-major distance matrix. The
    /// quasi-triangle constant is computed by brute force; `kappa_hint`, when
    /// given, must not be smaller than the computed value.
    pub fn from_dense(distances: Vec<f64>, masses: Vec<f64>, kappa_hint: Option<f64>) -> Result<Self> {
        let n = masses.len();
        crate::error::check_len(n * n, distances.len())?;
        for i in 0..n {
            if distances[i * n + i] != 0.0 {
                return Err(invalid(format!("d({i},{i}) must be zero")));
            }
            for j in 0..n {
                let d = distances[i * n + j];
                if !d.is_finite() || d < 0.0 {
                    return Err(invalid(format!("d({i},{j}) must be finite and nonnegative")));
                }
                if d != distances[j * n + i] {
                    return Err(invalid(format!("distance matrix not symmetric at ({i},{j})")));
                }
            }
        }
        let kappa = quasi_triangle_constant(&distances, n);
        if let Some(hint) = kappa_hint {
            if hint + 1e-12 < kappa {
                return Err(invalid(format!(
                    "kappa_hint {hint} is below the computed quasi-triangle constant {kappa}"
                )));
            }
        }
        Self::from_parts(Metric::Dense { distances }, masses, kappa, false)
    }

    /// Marks the space as a truncation of an unbounded model at the given radius.
    pub fn with_truncation(mut self, radius: f64) -> Self {
        self.truncation = Some(radius);
        self
    }

    pub fn truncation(&self) -> Option<f64> {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn mass(&self, i: usize) -> f64 {
        self.masses[i]
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Smallest distance between two distinct points.
    pub fn min_spacing(&self) -> f64 {
        self.min_spacing
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn total_measure(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// `∫ f dμ`, summed left to right.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        values.iter().zip(&self.masses).map(|(v, m)| v * m).sum()
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match &self.metric {
            Metric::UniformLine { h, .. } => i.abs_diff(j) as f64 * h,
            Metric::UniformCircle { h } => {
                let k = i.abs_diff(j);
                k.min(self.masses.len() - k) as f64 * h
            }
            Metric::Line { coords } => (coords[i] - coords[j]).abs(),
            Metric::Planar { points, .. } => (points[i] - points[j]).norm(),
            Metric::Dense { distances } => distances[i * self.masses.len() + j],
        }
    }

    /// Coordinate of a point on one-dimensional spaces (the angle on the circle).
    pub fn coord(&self, i: usize) -> Option<f64> {
        match &self.metric {
            Metric::UniformLine { a, h } => Some(a + (i as f64 + 0.5) * h),
            Metric::UniformCircle { h } => Some(-std::f64::consts::PI + (i as f64 + 0.5) * h),
            Metric::Line { coords } => Some(coords[i]),
            _ => None,
        }
    }

    /// Position in the plane for curve spaces.
    pub fn planar_point(&self, i: usize) -> Option<Complex64> {
        match &self.metric {
            Metric::Planar { points, .. } => Some(points[i]),
            Metric::UniformCircle { .. } => self.coord(i).map(|t| Complex64::from_polar(1.0, t)),
            _ => None,
        }
    }

    /// Unit tangent at a point for curve spaces (counter-clockwise orientation).
    pub fn tangent(&self, i: usize) -> Option<Complex64> {
        match &self.metric {
            Metric::Planar { tangents, .. } => Some(tangents[i]),
            Metric::UniformCircle { .. } => self
                .coord(i)
                .map(|t| Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, t)),
            _ => None,
        }
    }

    /// Position of a point in `[0, 1)` along the space: normalized coordinate
    /// on lines and circles, normalized index elsewhere.
    pub fn normalized_position(&self, i: usize) -> f64 {
        let n = self.len() as f64;
        match &self.metric {
            Metric::UniformLine { .. } | Metric::UniformCircle { .. } => (i as f64 + 0.5) / n,
            Metric::Line { coords } => {
                let span = coords[coords.len() - 1] - coords[0];
                (coords[i] - coords[0]) / span
            }
            _ => i as f64 / n,
        }
    }

    /// Distance from a point to a site.
    pub fn distance_to_site(&self, i: usize, site: Site) -> Result<f64> {
        match site {
            Site::Point(k) => {
                if k >= self.len() {
                    return Err(invalid(format!("anchor point {k} outside space of {} points", self.len())));
                }
                Ok(self.dist(i, k))
            }
            Site::At(x) => match &self.metric {
                Metric::UniformCircle { .. } => {
                    let two_pi = 2.0 * std::f64::consts::PI;
                    let t = self.coord(i).unwrap_or(0.0);
                    let delta = (t - x).rem_euclid(two_pi);
                    Ok(delta.min(two_pi - delta))
                }
                _ => match self.coord(i) {
                    Some(c) => Ok((c - x).abs()),
                    None => Err(Error::UnsupportedSpace(
                        "coordinate sites need a one-dimensional space".into(),
                    )),
                },
            },
        }
    }

    /// Point nearest to a site (lowest index on ties).
    pub fn nearest_point(&self, site: Site) -> Result<usize> {
        let mut best = (f64::INFINITY, 0);
        for i in 0..self.len() {
            let d = self.distance_to_site(i, site)?;
            if d < best.0 {
                best = (d, i);
            }
        }
        Ok(best.1)
    }

    /// All points grouped into distance shells around `center`.
    pub fn shells(&self, center: usize) -> Shells {
        let n = self.len();
        match &self.metric {
            Metric::UniformLine { h, .. } => {
                let mut order = Vec::with_capacity(n);
                let mut ends = Vec::with_capacity(n);
                let mut radii = Vec::with_capacity(n);
                order.push(center);
                ends.push(1);
                radii.push(0.0);
                let reach = center.max(n - 1 - center);
                for k in 1..=reach {
                    if center >= k {
                        order.push(center - k);
                    }
                    if center + k < n {
                        order.push(center + k);
                    }
                    ends.push(order.len());
                    radii.push(k as f64 * h);
                }
                Shells { order, ends, radii }
            }
            Metric::UniformCircle { h } => {
                let mut order = Vec::with_capacity(n);
                let mut ends = Vec::with_capacity(n / 2 + 1);
                let mut radii = Vec::with_capacity(n / 2 + 1);
                order.push(center);
                ends.push(1);
                radii.push(0.0);
                for k in 1..=(n / 2) {
                    order.push((center + n - k) % n);
                    if 2 * k != n {
                        order.push((center + k) % n);
                    }
                    ends.push(order.len());
                    radii.push(k as f64 * h);
                }
                Shells { order, ends, radii }
            }
            _ => {
                let mut pairs: Vec<(f64, usize)> = (0..n).map(|j| (self.dist(center, j), j)).collect();
                pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                let tol = 1e-12 * self.diameter.max(f64::MIN_POSITIVE);
                let mut order = Vec::with_capacity(n);
                let mut ends = Vec::new();
                let mut radii = Vec::new();
                for (k, &(d, j)) in pairs.iter().enumerate() {
                    if k > 0 && d - pairs[k - 1].0 > tol {
                        ends.push(order.len());
                    }
                    if k == 0 || d - pairs[k - 1].0 > tol {
                        radii.push(d);
                    }
                    order.push(j);
                }
                ends.push(order.len());
                Shells { order, ends, radii }
            }
        }
    }

    /// Half the smallest positive distance; used to regularize `d = 0`.
    pub fn epsilon_min(&self) -> f64 {
        0.5 * self.min_spacing
    }

    pub(crate) fn metric(&self) -> &Metric {
        &self.metric
    }
}

/// Open ball `{ j : d(center, j) < r }` and its measure.
pub fn ball(space: &DiscreteMeasureSpace, center: usize, r: f64) -> Result<Ball> {
    if !(r > 0.0) {
        return Err(invalid("ball radius must be positive"));
    }
    if center >= space.len() {
        return Err(invalid("ball center outside the space"));
    }
    let indices: Vec<usize> = (0..space.len()).filter(|&j| space.dist(center, j) < r).collect();
    let measure = indices.iter().map(|&j| space.mass(j)).sum();
    Ok(Ball { indices, measure })
}

fn quasi_triangle_constant(distances: &[f64], n: usize) -> f64 {
    let mut kappa = 1.0f64;
    for i in 0..n {
        for k in 0..n {
            let dik = distances[i * n + k];
            if dik == 0.0 {
                continue;
            }
            for j in 0..n {
                let s = distances[i * n + j] + distances[j * n + k];
                if s > 0.0 {
                    kappa = kappa.max(dik / s);
                }
            }
        }
    }
    kappa
}

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::gauss_legendre;
use super::{DiscreteMeasureSpace, Metric};
use crate::error::{invalid, Result};

/// Closed planar curves supported by [`build_carleson_curve`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    /// Unit circle.
    Circle,
    /// Ellipse with semi-axes `a` (along x) and `b`.
    Ellipse { a: f64, b: f64 },
    /// Closed polygon through the vertices in order.
    Polygon { vertices: Vec<(f64, f64)> },
}

/// `n` points at equal arc-length steps along a simple closed curve, oriented
/// counter-clockwise, with masses `length / n` and chordal distance.
pub fn build_carleson_curve(kind: &CurveKind, n: usize) -> Result<DiscreteMeasureSpace> {
    if n < 8 {
        return Err(invalid("curve discretization needs n >= 8"));
    }
    let (points, tangents, length) = match kind {
        CurveKind::Circle => circle_points(1.0, 1.0, n),
        CurveKind::Ellipse { a, b } => {
            if !(a.is_finite() && b.is_finite() && *a > 0.0 && *b > 0.0) {
                return Err(invalid("ellipse semi-axes must be positive"));
            }
            if a == b {
                circle_points(*a, *b, n)
            } else {
                ellipse_points(*a, *b, n)
            }
        }
        CurveKind::Polygon { vertices } => polygon_points(vertices, n)?,
    };
    let masses = vec![length / n as f64; n];
    DiscreteMeasureSpace::from_parts(Metric::Planar { points, tangents }, masses, 1.0, true)
}

fn circle_points(a: f64, _b: f64, n: usize) -> (Vec<Complex64>, Vec<Complex64>, f64) {
    let step = 2.0 * PI / n as f64;
    let points = (0..n).map(|i| Complex64::from_polar(a, i as f64 * step)).collect();
    let tangents = (0..n)
        .map(|i| Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, i as f64 * step))
        .collect();
    (points, tangents, 2.0 * PI * a)
}

fn ellipse_points(a: f64, b: f64, n: usize) -> (Vec<Complex64>, Vec<Complex64>, f64) {
    let speed = |t: f64| (a * a * t.sin().powi(2) + b * b * t.cos().powi(2)).sqrt();
    let m = (64 * n).max(4096);
    let dt = 2.0 * PI / m as f64;
    let mut cumulative = Vec::with_capacity(m + 1);
    cumulative.push(0.0);
    for k in 0..m {
        let seg = gauss_legendre(&speed, k as f64 * dt, (k + 1) as f64 * dt);
        cumulative.push(cumulative[k] + seg);
    }
    let length = cumulative[m];
    let mut points = Vec::with_capacity(n);
    let mut tangents = Vec::with_capacity(n);
    for i in 0..n {
        let target = length * i as f64 / n as f64;
        let k = cumulative.partition_point(|&s| s <= target).saturating_sub(1).min(m - 1);
        let t0 = k as f64 * dt;
        // Newton on s(t) − target inside the bracketing subinterval
        let mut t = t0 + dt * (target - cumulative[k]) / (cumulative[k + 1] - cumulative[k]);
        for _ in 0..8 {
            let s = cumulative[k] + gauss_legendre(&speed, t0, t);
            t -= (s - target) / speed(t);
        }
        points.push(Complex64::new(a * t.cos(), b * t.sin()));
        let d = Complex64::new(-a * t.sin(), b * t.cos());
        tangents.push(d / d.norm());
    }
    (points, tangents, length)
}

fn polygon_points(vertices: &[(f64, f64)], n: usize) -> Result<(Vec<Complex64>, Vec<Complex64>, f64)> {
    let m = vertices.len();
    if m < 3 {
        return Err(invalid("polygon needs at least three vertices"));
    }
    let mut v: Vec<Complex64> = vertices.iter().map(|&(x, y)| Complex64::new(x, y)).collect();
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(invalid("non-finite polygon vertex"));
    }
    for i in 0..m {
        if (v[(i + 1) % m] - v[i]).norm() == 0.0 {
            return Err(invalid("polygon has repeated consecutive vertices"));
        }
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            if adjacent {
                continue;
            }
            if segments_intersect(v[i], v[(i + 1) % m], v[j], v[(j + 1) % m]) {
                return Err(invalid(format!("polygon is self-intersecting (edges {i} and {j})")));
            }
        }
    }
    let area: f64 = (0..m).map(|i| v[i].re * v[(i + 1) % m].im - v[(i + 1) % m].re * v[i].im).sum();
    if area.abs() < 1e-300 {
        return Err(invalid("degenerate polygon"));
    }
    if area < 0.0 {
        v.reverse();
    }
    let edges: Vec<f64> = (0..m).map(|i| (v[(i + 1) % m] - v[i]).norm()).collect();
    let length: f64 = edges.iter().sum();
    let mut points = Vec::with_capacity(n);
    let mut tangents = Vec::with_capacity(n);
    let mut edge = 0;
    let mut start = 0.0;
    for i in 0..n {
        let s = length * i as f64 / n as f64;
        while edge + 1 < m && s >= start + edges[edge] {
            start += edges[edge];
            edge += 1;
        }
        let dir = (v[(edge + 1) % m] - v[edge]) / edges[edge];
        points.push(v[edge] + dir * (s - start));
        tangents.push(dir);
    }
    Ok((points, tangents, length))
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segments_intersect(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = cross(q2 - q1, p1 - q1);
    let d2 = cross(q2 - q1, p2 - q1);
    let d3 = cross(p2 - p1, q1 - p1);
    let d4 = cross(p2 - p1, q2 - p1);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: Complex64, b: Complex64, c: Complex64| {
        c.re >= a.re.min(b.re) && c.re <= a.re.max(b.re) && c.im >= a.im.min(b.im) && c.im <= a.im.max(b.im)
    };
    (d1 == 0.0 && on(q1, q2, p1))
        || (d2 == 0.0 && on(q1, q2, p2))
        || (d3 == 0.0 && on(p1, p2, q1))
        || (d4 == 0.0 && on(p1, p2, q2))
}

use std::f64::consts::PI;
use std::ops::Deref;

use super::{DiscreteMeasureSpace, Metric};
use crate::error::{invalid, Result};

/// Midpoint grid on an interval `[a, b]` or on the circle `[−π, π)`.
///
/// Node `i` sits at `a + (i + ½)h` and carries the mass of its cell. Derefs to
/// the underlying [`DiscreteMeasureSpace`].
#[derive(Clone, Debug)]
pub struct UniformGrid1D {
    space: DiscreteMeasureSpace,
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub h: f64,
    pub circle: bool,
}

impl Deref for UniformGrid1D {
    type Target = DiscreteMeasureSpace;

    fn deref(&self) -> &DiscreteMeasureSpace {
        &self.space
    }
}

impl AsRef<DiscreteMeasureSpace> for UniformGrid1D {
    fn as_ref(&self) -> &DiscreteMeasureSpace {
        &self.space
    }
}

impl UniformGrid1D {
    pub fn space(&self) -> &DiscreteMeasureSpace {
        &self.space
    }

    pub fn into_space(self) -> DiscreteMeasureSpace {
        self.space
    }

    /// Node coordinates.
    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.a + (i as f64 + 0.5) * self.h).collect()
    }

    pub fn node(&self, i: usize) -> f64 {
        self.a + (i as f64 + 0.5) * self.h
    }

    /// Same nodes, masses replaced by `∫_cell density(x) dx`.
    ///
    /// Cell integrals use 16-point Gauss–Legendre on 16 subcells, which is
    /// exact for polynomial densities of moderate degree and keeps the kink of
    /// `|x|`-type densities on a cell boundary when the grid is symmetric.
    pub fn with_density(&self, density: impl Fn(f64) -> f64) -> Result<UniformGrid1D> {
        let mut masses = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let lo = self.a + i as f64 * self.h;
            masses.push(cell_integral(&density, lo, lo + self.h));
        }
        let space = DiscreteMeasureSpace::from_parts(self.space.metric().clone(), masses, 1.0, self.circle)?;
        Ok(UniformGrid1D { space, ..self.clone() })
    }

    /// Replaces the masses directly.
    pub fn with_masses(&self, masses: Vec<f64>) -> Result<UniformGrid1D> {
        crate::error::check_len(self.n, masses.len())?;
        let space = DiscreteMeasureSpace::from_parts(self.space.metric().clone(), masses, 1.0, self.circle)?;
        Ok(UniformGrid1D { space, ..self.clone() })
    }

    /// Marks the grid as a truncation of the real line at the given radius.
    pub fn with_truncation(mut self, radius: f64) -> Self {
        self.space = self.space.with_truncation(radius);
        self
    }
}

/// Midpoint grid with `n` cells on `[a, b]` and Lebesgue cell masses.
pub fn build_interval_grid(a: f64, b: f64, n: usize) -> Result<UniformGrid1D> {
    if !a.is_finite() || !b.is_finite() {
        return Err(invalid("interval endpoints must be finite"));
    }
    if a >= b {
        return Err(invalid("interval needs a < b"));
    }
    if n < 2 {
        return Err(invalid("interval grid needs n >= 2"));
    }
    let h = (b - a) / n as f64;
    // masses sum to b − a exactly when h is representable; spread any
    // rounding residue over the last cell so the total is exact
    let mut masses = vec![h; n];
    let total: f64 = masses.iter().sum();
    masses[n - 1] += (b - a) - total;
    let space = DiscreteMeasureSpace::from_parts(Metric::UniformLine { a, h }, masses, 1.0, false)?;
    Ok(UniformGrid1D { space, a, b, n, h, circle: false })
}

/// Midpoint grid with `n` nodes on the circle of length `2π`, arc distance.
pub fn build_circle_grid(n: usize) -> Result<UniformGrid1D> {
    if n < 4 {
        return Err(invalid("circle grid needs n >= 4"));
    }
    let h = 2.0 * PI / n as f64;
    let mut masses = vec![h; n];
    let total: f64 = masses.iter().sum();
    masses[n - 1] += 2.0 * PI - total;
    let space = DiscreteMeasureSpace::from_parts(Metric::UniformCircle { h }, masses, 1.0, true)?;
    Ok(UniformGrid1D { space, a: -PI, b: PI, n, h, circle: true })
}

const GL16: [(f64, f64); 8] = [
    (0.0950125098376374, 0.1894506104550685),
    (0.2816035507792589, 0.1826034150449236),
    (0.4580167776572274, 0.1691565193950025),
    (0.6178762444026438, 0.1495959888165767),
    (0.7554044083550030, 0.1246289712555339),
    (0.8656312023878318, 0.0951585116824928),
    (0.9445750230732326, 0.0622535239386479),
    (0.9894009349916499, 0.0271524594117541),
];

pub(crate) fn gauss_legendre(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let c = 0.5 * (lo + hi);
    let r = 0.5 * (hi - lo);
    let mut s = 0.0;
    for &(x, w) in &GL16 {
        s += w * (f(c - r * x) + f(c + r * x));
    }
    s * r
}

pub(crate) fn cell_integral(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    const SUB: usize = 16;
    let step = (hi - lo) / SUB as f64;
    (0..SUB)
        .map(|k| gauss_legendre(f, lo + k as f64 * step, lo + (k + 1) as f64 * step))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_nodes_and_masses() {
        let g = build_interval_grid(0.0, 1.0, 4).unwrap();
        assert_eq!(g.nodes(), vec![0.125, 0.375, 0.625, 0.875]);
        assert!(g.masses().iter().all(|&m| m == 0.25));
        let g = build_interval_grid(-1.0, 1.0, 2).unwrap();
        assert_eq!(g.nodes(), vec![-0.5, 0.5]);
        assert_eq!(g.masses(), &[1.0, 1.0]);
        let g = build_interval_grid(0.0, 1.0, 1000).unwrap();
        assert!((g.total_measure() - 1.0).abs() < 1e-15);
        assert!(build_interval_grid(0.0, 1.0, 1).is_err());
        assert!(build_interval_grid(1.0, 0.0, 4).is_err());
        assert!(build_interval_grid(f64::NAN, 0.0, 4).is_err());
    }

    #[test]
    fn circle_basics() {
        let c = build_circle_grid(4).unwrap();
        assert!((c.dist(0, 2) - PI).abs() < 1e-15);
        let c = build_circle_grid(8).unwrap();
        assert!((c.total_measure() - 2.0 * PI).abs() < 1e-14);
        let b = super::super::ball(&c, 5, 2.0 * PI / 8.0 + 1e-9).unwrap();
        assert_eq!(b.indices.len(), 3);
        assert!(build_circle_grid(3).is_err());
    }

    #[test]
    fn density_masses() {
        let g = build_interval_grid(-1.0, 1.0, 8).unwrap();
        let w = g.with_density(|x: f64| x.abs()).unwrap();
        assert!((w.total_measure() - 1.0).abs() < 1e-13);
        assert!((w.mass(4) - 0.03125).abs() < 1e-14);
    }
}

use rayon::prelude::*;

use crate::error::{check_len, invalid, Result};
use crate::space::{DiscreteMeasureSpace, GridFunction};

/// Applies `per_center` to every point's shell structure in parallel.
pub(crate) fn sweep<T: Send>(
    space: &DiscreteMeasureSpace,
    per_center: impl Fn(usize, &crate::space::Shells) -> T + Sync,
) -> Vec<T> {
    (0..space.len())
        .into_par_iter()
        .map(|x| {
            let shells = space.shells(x);
            per_center(x, &shells)
        })
        .collect()
}

/// Centered Hardy–Littlewood maximal function: the largest average of `|f|`
/// over the balls centered at each point.
pub fn hl_maximal(f: &[f64], space: &DiscreteMeasureSpace) -> Result<GridFunction> {
    check_len(space.len(), f.len())?;
    let abs: Vec<f64> = f.iter().map(|v| v.abs()).collect();
    Ok(GridFunction::from_vec(maximal_of_nonneg(&abs, space)))
}

pub(crate) fn maximal_of_nonneg(abs: &[f64], space: &DiscreteMeasureSpace) -> Vec<f64> {
    let masses = space.masses();
    sweep(space, |x, shells| {
        let mut num = 0.0;
        let mut den = 0.0;
        // the smallest ball is the point itself; m·a/m need not round back to a
        let mut best = abs[x];
        for s in 0..shells.len() {
            for &j in shells.members(s) {
                num += abs[j] * masses[j];
                den += masses[j];
            }
            best = best.max(num / den);
        }
        best
    })
}

/// `k`-fold composition of [`hl_maximal`]; `k = 0` gives `|f|`.
pub fn iterated_maximal(f: &[f64], k: usize, space: &DiscreteMeasureSpace) -> Result<GridFunction> {
    check_len(space.len(), f.len())?;
    let mut cur: Vec<f64> = f.iter().map(|v| v.abs()).collect();
    for _ in 0..k {
        cur = maximal_of_nonneg(&cur, space);
    }
    Ok(GridFunction::from_vec(cur))
}

/// Fractional maximal function `sup_r μB(x,r)^{γ−1} ∫_B |f| dμ`.
pub fn fractional_maximal(f: &[f64], gamma: f64, space: &DiscreteMeasureSpace) -> Result<GridFunction> {
    check_len(space.len(), f.len())?;
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(invalid("fractional order must lie in (0, 1)"));
    }
    let masses = space.masses();
    Ok(GridFunction::from_vec(sweep(space, |_, shells| {
        let mut num = 0.0;
        let mut den = 0.0;
        let mut best = 0.0f64;
        for s in 0..shells.len() {
            for &j in shells.members(s) {
                num += f[j].abs() * masses[j];
                den += masses[j];
            }
            best = best.max(den.powf(gamma - 1.0) * num);
        }
        best
    })))
}

/// Fenwick tree over value ranks holding (count-mass, value-mass) sums.
struct Fenwick {
    mass: Vec<f64>,
    moment: Vec<f64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick { mass: vec![0.0; n + 1], moment: vec![0.0; n + 1] }
    }

    fn add(&mut self, rank: usize, m: f64, v: f64) {
        let mut i = rank + 1;
        while i < self.mass.len() {
            self.mass[i] += m;
            self.moment[i] += m * v;
            i += i & i.wrapping_neg();
        }
    }

    /// Sums over ranks `< rank`.
    fn prefix(&self, rank: usize) -> (f64, f64) {
        let (mut a, mut b) = (0.0, 0.0);
        let mut i = rank;
        while i > 0 {
            a += self.mass[i];
            b += self.moment[i];
            i -= i & i.wrapping_neg();
        }
        (a, b)
    }
}

/// Centered sharp maximal function `sup_r (1/μB) ∫_B |f − f_B| dμ`.
pub fn sharp_maximal(f: &[f64], space: &DiscreteMeasureSpace) -> Result<GridFunction> {
    check_len(space.len(), f.len())?;
    let n = space.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| f[a].total_cmp(&f[b]));
    let mut rank = vec![0; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let sorted: Vec<f64> = order.iter().map(|&i| f[i]).collect();
    let masses = space.masses();
    Ok(GridFunction::from_vec(sweep(space, |_, shells| {
        let mut tree = Fenwick::new(n);
        let mut total_m = 0.0;
        let mut total_v = 0.0;
        let mut best = 0.0f64;
        for s in 0..shells.len() {
            for &j in shells.members(s) {
                tree.add(rank[j], masses[j], f[j]);
                total_m += masses[j];
                total_v += masses[j] * f[j];
            }
            let avg = total_v / total_m;
            // ∫|f − a| = a·m₋ − v₋ + (v₊ − a·m₊) with ± split at a
            let cut = sorted.partition_point(|&v| v < avg);
            let (m_lo, v_lo) = tree.prefix(cut);
            let dev = (avg * m_lo - v_lo) + ((total_v - v_lo) - avg * (total_m - m_lo));
            best = best.max(dev.max(0.0) / total_m);
        }
        best
    })))
}

/// `(Σ_j (M f_j)^θ)^{1/θ}` pointwise.
pub fn vector_maximal(fs: &[&[f64]], theta: f64, space: &DiscreteMeasureSpace) -> Result<GridFunction> {
    if fs.is_empty() {
        return Err(invalid("vector maximal function needs at least one component"));
    }
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(invalid("theta must be positive and finite"));
    }
    let mut acc = vec![0.0; space.len()];
    for f in fs {
        let m = hl_maximal(f, space)?;
        for (a, v) in acc.iter_mut().zip(m.iter()) {
            *a += v.powf(theta);
        }
    }
    Ok(GridFunction::from_vec(acc.into_iter().map(|a| a.powf(1.0 / theta)).collect()))
}

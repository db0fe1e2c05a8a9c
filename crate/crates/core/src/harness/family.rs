use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::space::{DiscreteMeasureSpace, VariableExponent};
use crate::weights::WeightSpec;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyId {
    /// All twenty functions below.
    #[default]
    Standard,
    Trig,
    Indicators,
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedFunction {
    pub name: String,
    pub values: Vec<f64>,
}

const TRIG_DEGREES: [usize; 8] = [1, 2, 3, 4, 6, 8, 12, 16];
const RANDOM_COUNT: u64 = 6;
const RANDOM_BAND: usize = 16;

fn trig(t: &[f64]) -> Vec<NamedFunction> {
    TRIG_DEGREES
        .iter()
        .map(|&d| {
            let half = d.div_ceil(2) as f64;
            let values = t.iter().map(|&s| (2.0 * PI * d as f64 * s).cos() + 0.5 * (2.0 * PI * half * s).sin()).collect();
            NamedFunction { name: format!("trig_{d}"), values }
        })
        .collect()
}

/// Indicators of `[1/2, 1/2 + 2^{−j})` in normalized position.
fn indicators(t: &[f64]) -> Vec<NamedFunction> {
    (1..=6)
        .map(|j| {
            let hi = 0.5 + 2f64.powi(-j);
            let values = t.iter().map(|&s| if (0.5..hi).contains(&s) { 1.0 } else { 0.0 }).collect();
            NamedFunction { name: format!("dyadic_{j}"), values }
        })
        .collect()
}

/// Random trigonometric polynomials of degree 16 with coefficients `U(−1,1)/k`.
fn random(t: &[f64], seed: u64) -> Vec<NamedFunction> {
    (0..RANDOM_COUNT)
        .map(|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(j));
            let coef: Vec<(f64, f64)> = (1..=RANDOM_BAND)
                .map(|k| (rng.gen_range(-1.0..1.0) / k as f64, rng.gen_range(-1.0..1.0) / k as f64))
                .collect();
            let values = t
                .iter()
                .map(|&s| {
                    coef.iter()
                        .enumerate()
                        .map(|(k, (a, b))| {
                            let w = 2.0 * PI * (k + 1) as f64 * s;
                            a * w.cos() + b * w.sin()
                        })
                        .sum()
                })
                .collect();
            NamedFunction { name: format!("random_{j}"), values }
        })
        .collect()
}

/// Functions concentrated at each weight anchor: the dual profile
/// `ρ^{−p′}` on a ball of radius `L/4`, a unit point mass and the indicator
/// of a ball of radius `L/16` (`L` the diameter).
fn anchor_probes(
    space: &DiscreteMeasureSpace,
    weight: &WeightSpec,
    rho: &[f64],
    p: &VariableExponent,
) -> Result<Vec<NamedFunction>> {
    let diam = space.diameter();
    let mut out = Vec::new();
    for (k, a) in weight.anchors.iter().enumerate() {
        let c = space.nearest_point(a.site)?;
        let near = |r: f64| (0..space.len()).map(move |i| space.dist(c, i) < r);
        let dual = near(diam / 4.0)
            .enumerate()
            .map(|(i, inside)| {
                let pd = p.get(i) / (p.get(i) - 1.0);
                let v = rho[i].powf(-pd);
                if inside && v.is_finite() {
                    v
                } else {
                    0.0
                }
            })
            .collect();
        out.push(NamedFunction { name: format!("probe_dual_{k}"), values: dual });
        let mut point = vec![0.0; space.len()];
        point[c] = 1.0 / space.mass(c);
        out.push(NamedFunction { name: format!("probe_point_{k}"), values: point });
        let ball = near(diam / 16.0).map(|b| if b { 1.0 } else { 0.0 }).collect();
        out.push(NamedFunction { name: format!("probe_ball_{k}"), values: ball });
    }
    Ok(out)
}

/// The test family on one space: eight trigonometric polynomials, six dyadic
/// indicators and six seeded random polynomials, all in the normalized
/// position, followed by the anchor probes when requested.
pub fn test_family(
    id: FamilyId,
    space: &DiscreteMeasureSpace,
    seed: u64,
    probes: Option<(&WeightSpec, &[f64], &VariableExponent)>,
) -> Result<Vec<NamedFunction>> {
    let t: Vec<f64> = (0..space.len()).map(|i| space.normalized_position(i)).collect();
    let mut out = match id {
        FamilyId::Standard => {
            let mut v = trig(&t);
            v.extend(indicators(&t));
            v.extend(random(&t, seed));
            v
        }
        FamilyId::Trig => trig(&t),
        FamilyId::Indicators => indicators(&t),
        FamilyId::Random => random(&t, seed),
    };
    if let Some((w, rho, p)) = probes {
        out.extend(anchor_probes(space, w, rho, p)?);
    }
    Ok(out)
}

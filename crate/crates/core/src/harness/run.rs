use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::{test_family, NamedFunction};
use super::report::Environment;
use super::{BuiltSpace, ExperimentConfig, OperatorSpec};
use crate::error::{Error, Result};
use crate::extrapolation::{estimate_c0, rubio_de_francia, trace_extrapolation, ExtrapolationConfig, ProofTrace};
use crate::fourier::{cesaro_mean, continuous_multiplier, fourier_coeffs, partial_sum, steklov_mean, zygmund_mean};
use crate::norms::weighted_norm_value;
use crate::operators::{
    cauchy_singular, cz_apply_real, fractional_maximal, hl_maximal, metric_potential, riesz_potential, sharp_maximal,
};
use crate::space::{DiscreteMeasureSpace, VariableExponent};
use crate::weights::eval_weight;

/// Largest relative growth of the maximal ratio still called bounded.
pub const BOUNDED_GROWTH: f64 = 0.25;
/// Smallest relative growth called growing.
pub const GROWING_GROWTH: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Bounded,
    Growing,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Bounded => "bounded",
            Verdict::Growing => "growing",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionRatio {
    pub function: String,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolutionResult {
    pub n: usize,
    pub ratios: Vec<FunctionRatio>,
    pub max_ratio: f64,
    pub argmax: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub resolutions: Vec<ResolutionResult>,
    pub max_ratio: f64,
    /// `max_n max_ratio(n) / max_ratio(coarsest) − 1`.
    pub growth: f64,
    /// Least-squares slope of `ln max_ratio` against `ln n`.
    pub trend_slope: f64,
    pub verdict: Verdict,
    pub environment: Environment,
}

struct Setup {
    built: BuiltSpace,
    p: VariableExponent,
    rho: Vec<f64>,
    family: Vec<NamedFunction>,
}

fn setup(cfg: &ExperimentConfig, n: usize) -> Result<Setup> {
    let built = cfg.space.build(n)?;
    let space = built.space();
    let p = cfg.exponent.build(space)?;
    let rho = eval_weight(&cfg.weight, space)?.into_vec();
    let probes = (cfg.anchor_probes && !cfg.weight.anchors.is_empty()).then_some((&cfg.weight, rho.as_slice(), &p));
    let family = test_family(cfg.family, space, cfg.seed, probes)?;
    Ok(Setup { built, p, rho, family })
}

fn need_grid<'a>(built: &'a BuiltSpace, op: &OperatorSpec) -> Result<&'a crate::space::UniformGrid1D> {
    built
        .grid()
        .ok_or_else(|| Error::Config(format!("operator {} needs an interval or circle space", op.id())))
}

fn complex(f: &[f64]) -> Vec<Complex64> {
    f.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

/// `|Tf|` for the configured operator.
pub(crate) fn apply_operator(op: &OperatorSpec, f: &[f64], built: &BuiltSpace) -> Result<Vec<f64>> {
    let space = built.space();
    let out = match op {
        OperatorSpec::Identity => f.to_vec(),
        OperatorSpec::Maximal => hl_maximal(f, space)?.into_vec(),
        OperatorSpec::Sharp => sharp_maximal(f, space)?.into_vec(),
        OperatorSpec::FractionalMaximal { gamma } => fractional_maximal(f, *gamma, space)?.into_vec(),
        OperatorSpec::MetricPotential { gamma } => metric_potential(f, *gamma, space)?.into_vec(),
        OperatorSpec::RieszPotential { alpha } => riesz_potential(f, *alpha, need_grid(built, op)?)?.into_vec(),
        OperatorSpec::Singular { kernel } => cz_apply_real(f, kernel, space)?.output.abs().into_vec(),
        OperatorSpec::Cauchy => cauchy_singular(&complex(f), space)?.abs().into_vec(),
        OperatorSpec::Multiplier { symbol } => {
            continuous_multiplier(symbol, &complex(f), need_grid(built, op)?)?.abs().into_vec()
        }
        OperatorSpec::PartialSum { order } | OperatorSpec::Zygmund { order } | OperatorSpec::Cesaro { order } => {
            let grid = need_grid(built, op)?;
            let series = fourier_coeffs(f, grid)?;
            let k = (*order).min(series.order());
            match op {
                OperatorSpec::PartialSum { .. } => partial_sum(&series, k, grid)?,
                OperatorSpec::Zygmund { .. } => zygmund_mean(&series, k, grid)?,
                _ => cesaro_mean(&series, k, grid)?,
            }
            .into_vec()
        }
        OperatorSpec::Steklov { h } => steklov_mean(f, *h, need_grid(built, op)?)?.into_vec(),
    };
    Ok(out.into_iter().map(f64::abs).collect())
}

fn verdict(maxes: &[f64]) -> (f64, Verdict) {
    let Some(&first) = maxes.first() else {
        return (0.0, Verdict::Inconclusive);
    };
    let top = maxes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let growth = if first > 0.0 { top / first - 1.0 } else { 0.0 };
    let v = if maxes.len() < 2 {
        Verdict::Inconclusive
    } else if growth < BOUNDED_GROWTH {
        Verdict::Bounded
    } else if growth >= GROWING_GROWTH {
        Verdict::Growing
    } else {
        Verdict::Inconclusive
    };
    (growth, v)
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx > 0.0 {
        sxy / sxx
    } else {
        0.0
    }
}

/// Ratios `‖ρ·Tf‖_{q(·)} / ‖ρ·f‖_{p(·)}` over the family at every resolution.
/// Functions of zero norm are left out.
pub fn run_boundedness(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let mut resolutions = Vec::new();
    for n in cfg.effective_resolutions() {
        let s = setup(cfg, n)?;
        let space = s.built.space();
        let q = cfg.operator.target(&s.p)?;
        let ratios: Vec<Option<FunctionRatio>> = s
            .family
            .par_iter()
            .map(|f| -> Result<Option<FunctionRatio>> {
                let abs: Vec<f64> = f.values.iter().map(|v| v.abs()).collect();
                let den = weighted_norm_value(&abs, s.p.values(), &s.rho, space);
                if den == 0.0 {
                    return Ok(None);
                }
                let tf = apply_operator(&cfg.operator, &f.values, &s.built)?;
                let num = weighted_norm_value(&tf, q.values(), &s.rho, space);
                Ok(Some(FunctionRatio { function: f.name.clone(), ratio: num / den }))
            })
            .collect::<Result<_>>()?;
        let ratios: Vec<FunctionRatio> = ratios.into_iter().flatten().collect();
        let (max_ratio, argmax) = ratios
            .iter()
            .fold((0.0, String::new()), |(m, a), r| if r.ratio > m { (r.ratio, r.function.clone()) } else { (m, a) });
        resolutions.push(ResolutionResult { n: space.len(), ratios, max_ratio, argmax });
    }
    let maxes: Vec<f64> = resolutions.iter().map(|r| r.max_ratio).collect();
    let (growth, verdict) = verdict(&maxes);
    let pts: Vec<(f64, f64)> = resolutions
        .iter()
        .filter(|r| r.max_ratio > 0.0)
        .map(|r| ((r.n as f64).ln(), r.max_ratio.ln()))
        .collect();
    Ok(ExperimentReport {
        config: cfg.clone(),
        max_ratio: maxes.iter().copied().fold(0.0, f64::max),
        growth,
        trend_slope: slope(&pts),
        verdict,
        resolutions,
        environment: Environment::current(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedTrace {
    pub function: String,
    #[serde(flatten)]
    pub trace: ProofTrace,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRun {
    pub n: usize,
    /// Constant of the iteration `S`.
    pub c0_rdf: f64,
    /// Constant claimed in the hypothesis step.
    pub c0_claim: f64,
    pub passed: usize,
    pub failed: usize,
    /// Failure count per step id.
    pub step_failures: BTreeMap<String, usize>,
    pub max_final_ratio: f64,
    pub traces: Vec<NamedTrace>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub name: String,
    pub runs: Vec<TraceRun>,
}

impl TraceSummary {
    pub fn all_passed(&self) -> bool {
        self.runs.iter().all(|r| r.failed == 0)
    }
}

fn hypothesis_ratio(f: &[f64], g: &[f64], w: &[f64], p0: f64, q0: f64, space: &DiscreteMeasureSpace) -> f64 {
    let num: Vec<f64> = f.iter().zip(w).map(|(a, b)| a.powf(q0) * b).collect();
    let den: Vec<f64> = g.iter().zip(w).map(|(a, b)| a.powf(p0) * b.powf(p0 / q0)).collect();
    let (num, den) = (space.integrate(&num), space.integrate(&den));
    if den > 0.0 {
        num.powf(1.0 / q0) / den.powf(1.0 / p0)
    } else {
        0.0
    }
}

/// Proof traces for the pairs `(Tg, g)` with `g = |φ_j|` and test function
/// `h = |φ_{j + m/2}|` over the family `φ` of size `m`, at every resolution.
pub fn run_proof_trace(cfg: &ExperimentConfig) -> Result<TraceSummary> {
    cfg.validate()?;
    let t = cfg.trace.as_ref().ok_or_else(|| Error::Config("the config has no trace section".into()))?;
    let mut runs = Vec::new();
    for n in cfg.effective_resolutions() {
        let s = setup(cfg, n)?;
        let space = s.built.space();
        let ex = ExtrapolationConfig::new(
            s.p.clone(),
            crate::space::GridFunction::new(s.rho.clone())?,
            t.p0,
            t.q0,
            1.0,
        )?;
        let q = ex.q()?;
        let gs: Vec<(String, Vec<f64>)> = s
            .family
            .iter()
            .map(|f| (f.name.clone(), f.values.iter().map(|v| v.abs()).collect::<Vec<f64>>()))
            .filter(|(_, v)| v.iter().any(|x| *x > 0.0))
            .collect();
        if gs.is_empty() {
            return Err(Error::Config("the trace family is empty".into()));
        }
        let trials: Vec<Vec<f64>> = gs.iter().map(|g| g.1.clone()).collect();
        let c0_rdf = estimate_c0(&q, &s.rho, t.q0, space, &trials, t.safety)?;
        let ex = ExtrapolationConfig { c0: c0_rdf, ..ex };
        let m = gs.len();
        let pairs: Vec<(String, Vec<f64>, Vec<f64>, Vec<f64>)> = gs
            .par_iter()
            .enumerate()
            .map(|(j, (name, g))| {
                let f = apply_operator(&t.operator, g, &s.built)?;
                Ok((name.clone(), f, g.clone(), gs[(j + m / 2) % m].1.clone()))
            })
            .collect::<Result<_>>()?;
        let claim = match (t.c0, &t.operator) {
            (Some(c), _) => c,
            (None, OperatorSpec::Identity) => 1.0,
            (None, _) => {
                let ratios: Vec<f64> = pairs
                    .par_iter()
                    .map(|(_, f, g, h)| -> Result<f64> {
                        let sh = rubio_de_francia(h, c0_rdf, None, space)?.s_phi;
                        Ok(hypothesis_ratio(f, g, &sh, t.p0, t.q0, space))
                    })
                    .collect::<Result<_>>()?;
                t.safety * ratios.into_iter().fold(0.0, f64::max)
            }
        };
        let c0_claim = claim * t.c0_scale;
        let traces: Vec<NamedTrace> = pairs
            .par_iter()
            .map(|(name, f, g, h)| {
                Ok(NamedTrace { function: name.clone(), trace: trace_extrapolation(&ex, f, g, h, c0_claim, space)? })
            })
            .collect::<Result<_>>()?;
        let mut step_failures = BTreeMap::new();
        for tr in &traces {
            for st in tr.trace.steps.iter().filter(|st| !st.passed) {
                *step_failures.entry(st.id.clone()).or_insert(0) += 1;
            }
        }
        let passed = traces.iter().filter(|t| t.trace.passes).count();
        runs.push(TraceRun {
            n: space.len(),
            c0_rdf,
            c0_claim,
            passed,
            failed: traces.len() - passed,
            step_failures,
            max_final_ratio: traces.iter().map(|t| t.trace.final_ratio).fold(0.0, f64::max),
            traces,
        });
    }
    Ok(TraceSummary { name: cfg.name.clone(), runs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{ExponentSpec, FamilyId, SpaceSpec, TraceSpec};
    use crate::weights::WeightSpec;

    fn config(op: OperatorSpec, res: Vec<usize>) -> ExperimentConfig {
        ExperimentConfig {
            name: "t".into(),
            space: SpaceSpec::Interval { a: 0.0, b: 1.0, truncation: None, density_power: None },
            exponent: ExponentSpec::constant(2.0),
            weight: WeightSpec::unweighted(),
            operator: op,
            family: FamilyId::Standard,
            anchor_probes: true,
            seed: 1,
            resolutions: res,
            trace: None,
            output: None,
        }
    }

    #[test]
    fn identity_and_maximal() {
        let r = run_boundedness(&config(OperatorSpec::Identity, vec![64, 128])).unwrap();
        assert!(r.resolutions.iter().flat_map(|r| &r.ratios).all(|f| (f.ratio - 1.0).abs() < 1e-10));
        assert_eq!(r.verdict, Verdict::Bounded);
        let r = run_boundedness(&config(OperatorSpec::Maximal, vec![64, 128, 256])).unwrap();
        assert_eq!(r.verdict, Verdict::Bounded, "{:?}", r.resolutions);
        assert!(r.max_ratio < 4.0 && r.max_ratio > 1.0);
        assert_eq!(r.resolutions[0].ratios.len(), 20);
    }

    #[test]
    fn verdict_thresholds() {
        assert_eq!(verdict(&[1.0, 1.2]).1, Verdict::Bounded);
        assert_eq!(verdict(&[1.0, 1.5]).1, Verdict::Inconclusive);
        assert_eq!(verdict(&[1.0, 1.5, 2.0]).1, Verdict::Growing);
        assert_eq!(verdict(&[1.0]).1, Verdict::Inconclusive);
        assert!((slope(&[(0.0, 1.0), (1.0, 3.0)]) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn incompatible_potential() {
        let cfg = config(OperatorSpec::MetricPotential { gamma: 0.6 }, vec![32]);
        assert!(matches!(run_boundedness(&cfg), Err(Error::Config(_))));
        let mut cfg = config(OperatorSpec::Maximal, vec![64, 32]);
        assert!(matches!(run_boundedness(&cfg), Err(Error::Config(_))));
        cfg.resolutions = vec![32];
        cfg.operator = OperatorSpec::PartialSum { order: 4 };
        assert!(run_boundedness(&cfg).is_err());
    }

    #[test]
    fn traces() {
        let mut cfg = config(OperatorSpec::Identity, vec![64]);
        cfg.trace =
            Some(TraceSpec { operator: OperatorSpec::Identity, p0: 1.5, q0: 1.5, c0: None, c0_scale: 1.0, safety: 1.5 });
        let s = run_proof_trace(&cfg).unwrap();
        assert!(s.all_passed(), "{:?}", s.runs[0].step_failures);
        assert!(s.runs[0].traces.iter().all(|t| (t.trace.final_ratio - 1.0).abs() < 1e-10));
        cfg.trace.as_mut().unwrap().c0_scale = 0.5;
        let s = run_proof_trace(&cfg).unwrap();
        assert_eq!(s.runs[0].step_failures.keys().collect::<Vec<_>>(), ["hypothesis"]);
        assert_eq!(s.runs[0].failed, 20);
        cfg.trace = Some(TraceSpec { operator: OperatorSpec::Maximal, p0: 1.5, q0: 1.5, c0: None, c0_scale: 1.0, safety: 1.5 });
        let s = run_proof_trace(&cfg).unwrap();
        assert!(s.all_passed(), "{:?}", s.runs[0].step_failures);
    }
}

//! Experiment orchestration: configuration, test families, boundedness
//! sweeps, proof traces and persisted reports.

mod family;
mod report;
mod run;

pub use family::{test_family, FamilyId, NamedFunction};
pub use report::{report_emit, report_to_string, Environment, Format, Report};
pub use run::{
    run_boundedness, run_proof_trace, ExperimentReport, FunctionRatio, NamedTrace, ResolutionResult, TraceRun,
    TraceSummary, Verdict, BOUNDED_GROWTH, GROWING_GROWTH,
};

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{io_err, Error, Result};
use crate::fourier::SymbolSpec;
use crate::operators::KernelSpec;
use crate::space::{
    build_carleson_curve, build_circle_grid, build_interval_grid, CurveKind, DiscreteMeasureSpace, Site,
    UniformGrid1D, VariableExponent,
};
use crate::weights::WeightSpec;

/// Space family; the resolution is supplied per run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceSpec {
    Interval {
        a: f64,
        b: f64,
        /// Treat the grid as a truncation of the real line at this radius.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        truncation: Option<f64>,
        /// Masses `∫_cell |x|^s dx` instead of Lebesgue.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        density_power: Option<f64>,
    },
    Circle,
    Curve { curve: CurveKind },
    /// Fixed custom space; resolutions are ignored.
    Custom { path: PathBuf },
}

/// A space built at one resolution.
#[derive(Clone, Debug)]
pub enum BuiltSpace {
    Grid(UniformGrid1D),
    General(DiscreteMeasureSpace),
}

impl BuiltSpace {
    pub fn space(&self) -> &DiscreteMeasureSpace {
        match self {
            BuiltSpace::Grid(g) => g.space(),
            BuiltSpace::General(s) => s,
        }
    }

    pub fn grid(&self) -> Option<&UniformGrid1D> {
        match self {
            BuiltSpace::Grid(g) => Some(g),
            BuiltSpace::General(_) => None,
        }
    }
}

impl SpaceSpec {
    pub fn build(&self, n: usize) -> Result<BuiltSpace> {
        Ok(match self {
            SpaceSpec::Interval { a, b, truncation, density_power } => {
                let mut g = build_interval_grid(*a, *b, n)?;
                if let Some(s) = density_power {
                    let s = *s;
                    g = g.with_density(move |x| x.abs().powf(s))?;
                }
                if let Some(r) = truncation {
                    g = g.with_truncation(*r);
                }
                BuiltSpace::Grid(g)
            }
            SpaceSpec::Circle => BuiltSpace::Grid(build_circle_grid(n)?),
            SpaceSpec::Curve { curve } => BuiltSpace::General(build_carleson_curve(curve, n)?),
            SpaceSpec::Custom { path } => BuiltSpace::General(DiscreteMeasureSpace::load_custom(path)?),
        })
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self, SpaceSpec::Custom { .. })
    }
}

/// Shape of `p(·)` in the coordinate of the space (the normalized position
/// on spaces without one).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExponentShape {
    Constant { value: f64 },
    /// `base + slope·x`
    Affine { base: f64, slope: f64 },
    /// `low + (high − low)(1 + tanh((x − at)/width))/2`
    SmoothedStep { low: f64, high: f64, at: f64, width: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailSpec {
    pub value: f64,
    pub radius: f64,
    pub origin: Site,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentSpec {
    #[serde(flatten)]
    pub shape: ExponentShape,
    /// Constant value outside a ball; overrides the shape there.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailSpec>,
}

impl Default for ExponentSpec {
    fn default() -> Self {
        ExponentSpec { shape: ExponentShape::Constant { value: 2.0 }, tail: None }
    }
}

impl ExponentSpec {
    pub fn constant(value: f64) -> Self {
        ExponentSpec { shape: ExponentShape::Constant { value }, tail: None }
    }

    pub fn build(&self, space: &DiscreteMeasureSpace) -> Result<VariableExponent> {
        let at = |x: f64| match self.shape {
            ExponentShape::Constant { value } => value,
            ExponentShape::Affine { base, slope } => base + slope * x,
            ExponentShape::SmoothedStep { low, high, at, width } => {
                low + (high - low) * (1.0 + ((x - at) / width).tanh()) / 2.0
            }
        };
        if let ExponentShape::SmoothedStep { width, .. } = self.shape {
            if !(width > 0.0) {
                return Err(Error::Config("smoothed step width must be positive".into()));
            }
        }
        let mut values: Vec<f64> =
            (0..space.len()).map(|i| at(space.coord(i).unwrap_or_else(|| space.normalized_position(i)))).collect();
        let Some(tail) = &self.tail else {
            return VariableExponent::new(values);
        };
        let origin = space.nearest_point(tail.origin)?;
        for (i, v) in values.iter_mut().enumerate() {
            if space.dist(origin, i) > tail.radius {
                *v = tail.value;
            }
        }
        VariableExponent::new(values)?.with_tail(space, tail.value, tail.radius, origin)
    }
}

/// Operator under test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case")]
pub enum OperatorSpec {
    Identity,
    Maximal,
    Sharp,
    /// `L^p → L^q` with `1/q = 1/p − γ`.
    FractionalMaximal { gamma: f64 },
    /// `L^p → L^q` with `1/q = 1/p − γ`.
    MetricPotential { gamma: f64 },
    /// Interval grids; `L^p → L^q` with `1/q = 1/p − α`.
    RieszPotential { alpha: f64 },
    Singular { kernel: KernelSpec },
    /// Curves from the `curve` space kind.
    Cauchy,
    /// Grid spaces.
    Multiplier { symbol: SymbolSpec },
    /// Circle grid; orders above the resolved range are clipped.
    PartialSum { order: usize },
    Zygmund { order: usize },
    Cesaro { order: usize },
    Steklov { h: f64 },
}

impl OperatorSpec {
    pub fn id(&self) -> &'static str {
        match self {
            OperatorSpec::Identity => "identity",
            OperatorSpec::Maximal => "maximal",
            OperatorSpec::Sharp => "sharp",
            OperatorSpec::FractionalMaximal { .. } => "fractional_maximal",
            OperatorSpec::MetricPotential { .. } => "metric_potential",
            OperatorSpec::RieszPotential { .. } => "riesz_potential",
            OperatorSpec::Singular { .. } => "singular",
            OperatorSpec::Cauchy => "cauchy",
            OperatorSpec::Multiplier { .. } => "multiplier",
            OperatorSpec::PartialSum { .. } => "partial_sum",
            OperatorSpec::Zygmund { .. } => "zygmund",
            OperatorSpec::Cesaro { .. } => "cesaro",
            OperatorSpec::Steklov { .. } => "steklov",
        }
    }

    /// Order lowering `1/p` for off-diagonal operators.
    pub fn gamma(&self) -> Option<f64> {
        match self {
            OperatorSpec::FractionalMaximal { gamma } | OperatorSpec::MetricPotential { gamma } => Some(*gamma),
            OperatorSpec::RieszPotential { alpha } => Some(*alpha),
            _ => None,
        }
    }

    /// Target exponent of the operator.
    pub fn target(&self, p: &VariableExponent) -> Result<VariableExponent> {
        match self.gamma() {
            None => Ok(p.clone()),
            Some(g) => p.sobolev(g, 1.0).map_err(|e| {
                Error::Config(format!("{} is incompatible with the exponent (needs p_+ < 1/{g}): {e}", self.id()))
            }),
        }
    }
}

/// Pair family and constants of a proof trace run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSpec {
    /// `identity` or `maximal`: pairs `(Tg, g)`.
    pub operator: OperatorSpec,
    pub p0: f64,
    pub q0: f64,
    /// Claimed constant of the hypothesis; swept from the family when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c0: Option<f64>,
    /// Multiplies the claimed constant (0.5 for a falsification run).
    #[serde(default = "one")]
    pub c0_scale: f64,
    #[serde(default = "safety")]
    pub safety: f64,
}

fn one() -> f64 {
    1.0
}

fn safety() -> f64 {
    1.5
}

/// One experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub space: SpaceSpec,
    #[serde(default)]
    pub exponent: ExponentSpec,
    #[serde(default)]
    pub weight: WeightSpec,
    pub operator: OperatorSpec,
    #[serde(default)]
    pub family: FamilyId,
    /// Adds probes concentrated at each weight anchor.
    #[serde(default = "yes")]
    pub anchor_probes: bool,
    #[serde(default)]
    pub seed: u64,
    pub resolutions: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn yes() -> bool {
    true
}

impl ExperimentConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        let cfg: ExperimentConfig =
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.space.is_fixed() {
            if self.resolutions.is_empty() {
                return Err(Error::Config("at least one resolution is required".into()));
            }
            if self.resolutions.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::Config("resolutions must be strictly increasing".into()));
            }
        }
        self.weight.validate()?;
        if let Some(t) = &self.trace {
            if !matches!(t.operator, OperatorSpec::Identity | OperatorSpec::Maximal) {
                return Err(Error::Config("trace pairs support the identity and maximal operators".into()));
            }
            if !(t.c0_scale > 0.0 && t.safety >= 1.0) {
                return Err(Error::Config("trace c0_scale must be positive and safety at least 1".into()));
            }
        }
        Ok(())
    }

    /// Resolutions actually run.
    pub fn effective_resolutions(&self) -> Vec<usize> {
        if self.space.is_fixed() {
            vec![0]
        } else {
            self.resolutions.clone()
        }
    }
}

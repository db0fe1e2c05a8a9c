use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use varexp::dims::{central_point, dim_bounds, doubling_constant};
use varexp::fourier::{cesaro_mean, fourier_coeffs, littlewood_paley_square, majorant, partial_sum, zygmund_mean};
use varexp::harness::{
    report_to_string, run_boundedness, run_proof_trace, test_family, BuiltSpace, ExperimentConfig, ExponentSpec,
    FamilyId, Format, OperatorSpec, Report, SpaceSpec, Verdict,
};
use varexp::norms::luxemburg_norm;
use varexp::operators::hl_maximal;
use varexp::space::{build_circle_grid, GridFunction};
use varexp::weights::{
    check_muckenhoupt, check_v_class, check_v_osc_class, eval_weight, muckenhoupt_trend, theorem_erz_condition,
    WeightSpec,
};
use varexp::Error;

/// Weighted variable-exponent Lebesgue spaces: norms, weights, dimensions,
/// operators and extrapolation traces.
#[derive(Parser)]
#[command(name = "varexp", version)]
struct Cli {
    /// Experiment config (JSON). Defaults to the maximal operator on [0, 1]
    /// with p = 2 and no weight.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the seed of the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory; results go to stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides the resolutions of the config, e.g. 256,1024,4096.
    #[arg(long, global = true, value_delimiter = ',')]
    resolutions: Option<Vec<usize>>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Luxemburg norms of an input function or of the test family.
    Norm {
        /// CSV of function values; the space is built at its length.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Maximal function; fails if `Mf ≥ |f|` is violated.
    Maximal {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Weight class checks.
    Weights {
        #[command(subcommand)]
        action: WeightsAction,
    },
    /// Local dimension bounds at the weight anchors (or the central point)
    /// and the doubling constant.
    Dims,
    /// Muckenhoupt constant of `ρ^{p(·)}` in `A_{p₋}`, or of `ρ^s` in `A_s`.
    Apcheck {
        #[arg(long)]
        s: Option<f64>,
    },
    /// Operator experiments.
    Operator {
        #[command(subcommand)]
        action: OperatorAction,
    },
    /// Extrapolation proof traces.
    Extrapolate {
        #[command(subcommand)]
        action: ExtrapolateAction,
    },
    /// Fourier summation on a circle grid.
    Fourier {
        #[command(subcommand)]
        action: FourierAction,
    },
    /// Boundedness sweep plus the trace section of the config, as one report.
    Report,
}

#[derive(Subcommand)]
enum WeightsAction {
    /// Membership in the classes V (power factors) and V^osc.
    Check,
}

#[derive(Subcommand)]
enum OperatorAction {
    /// Boundedness ratios over the family and the resolutions.
    Run,
}

#[derive(Subcommand)]
enum ExtrapolateAction {
    /// Runs the trace section of the config.
    Trace,
}

#[derive(Subcommand)]
enum FourierAction {
    Sum {
        #[arg(long, value_enum, default_value = "partial")]
        method: SumMethod,
        /// Order of the sum (ignored by `square`).
        #[arg(long, default_value_t = 16)]
        order: usize,
        /// CSV of function values on the circle grid of that length.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SumMethod {
    Partial,
    Zygmund,
    Cesaro,
    Majorant,
    Square,
}

/// `Ok(false)` marks a property violation.
type Outcome = Result<bool, Error>;

fn default_config() -> ExperimentConfig {
    ExperimentConfig {
        name: "default".into(),
        space: SpaceSpec::Interval { a: 0.0, b: 1.0, truncation: None, density_power: None },
        exponent: ExponentSpec::constant(2.0),
        weight: WeightSpec::unweighted(),
        operator: OperatorSpec::Maximal,
        family: FamilyId::Standard,
        anchor_probes: true,
        seed: 0,
        resolutions: vec![256, 1024, 4096],
        trace: None,
        output: None,
    }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => default_config(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(r) = &cli.resolutions {
        cfg.resolutions = r.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_text(cli: &Cli, file: &str, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.clone(), source: e })?;
            let path = dir.join(file);
            std::fs::write(&path, text).map_err(|e| Error::Io { path, source: e })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(cli: &Cli, stem: &str, value: &impl Serialize) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    write_text(cli, &format!("{stem}.json"), &text)
}

fn read_input(path: &Path) -> Result<Vec<f64>, Error> {
    Ok(GridFunction::read_csv(path)?.into_vec())
}

/// Spaces and inputs to work on: the input at its own length, or the test
/// family at every resolution.
fn inputs(cfg: &ExperimentConfig, input: Option<&Path>) -> Result<Vec<(BuiltSpace, Vec<(String, Vec<f64>)>)>, Error> {
    if let Some(path) = input {
        let f = read_input(path)?;
        return Ok(vec![(cfg.space.build(f.len())?, vec![("input".into(), f)])]);
    }
    let mut out = Vec::new();
    for n in cfg.effective_resolutions() {
        let built = cfg.space.build(n)?;
        let fam = test_family(cfg.family, built.space(), cfg.seed, None)?;
        out.push((built, fam.into_iter().map(|f| (f.name, f.values)).collect()));
    }
    Ok(out)
}

fn cmd_norm(cli: &Cli, input: Option<&Path>) -> Outcome {
    let cfg = load_config(cli)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for (built, fs) in inputs(&cfg, input)? {
        let space = built.space();
        let p = cfg.exponent.build(space)?;
        let rho = eval_weight(&cfg.weight, space)?;
        for (name, f) in fs {
            let r = luxemburg_norm(&f, &p, &rho, space)?;
            if r.value > 0.0 && (r.modular_at_value - 1.0).abs() > 1e-8 {
                ok = false;
            }
            rows.push(json!({ "n": space.len(), "function": name, "norm": r }));
        }
    }
    emit_json(cli, "norm", &rows)?;
    Ok(ok)
}

fn cmd_maximal(cli: &Cli, input: Option<&Path>) -> Outcome {
    let cfg = load_config(cli)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for (built, fs) in inputs(&cfg, input)? {
        let space = built.space();
        for (name, f) in fs {
            let m = hl_maximal(&f, space)?;
            let slack = m.iter().zip(&f).map(|(a, b)| a - b.abs()).fold(f64::INFINITY, f64::min);
            ok &= slack >= 0.0;
            if input.is_some() {
                let mut buf = Vec::new();
                m.write_csv_to(&mut buf)?;
                write_text(cli, "maximal.csv", &String::from_utf8_lossy(&buf))?;
                return Ok(ok);
            }
            rows.push(json!({ "n": space.len(), "function": name, "sup": m.sup_abs(), "min_slack": slack }));
        }
    }
    emit_json(cli, "maximal", &rows)?;
    Ok(ok)
}

fn omega(cfg: &ExperimentConfig, built: &BuiltSpace) -> Result<Vec<usize>, Error> {
    let space = built.space();
    if cfg.weight.anchors.is_empty() {
        return Ok(vec![central_point(space)]);
    }
    cfg.weight.anchors.iter().map(|a| space.nearest_point(a.site)).collect()
}

fn finest(cfg: &ExperimentConfig) -> Result<BuiltSpace, Error> {
    let n = cfg.effective_resolutions().last().copied().unwrap_or(0);
    cfg.space.build(n)
}

fn cmd_weights(cli: &Cli) -> Outcome {
    let cfg = load_config(cli)?;
    let built = finest(&cfg)?;
    let space = built.space();
    let p = cfg.exponent.build(space)?;
    let dims = dim_bounds(space, &omega(&cfg, &built)?)?;
    let all_power = cfg.weight.anchors.iter().all(|a| a.factor.power_exponent().is_some())
        && cfg.weight.infinity.as_ref().is_none_or(|f| f.factor.power_exponent().is_some());
    let v = if all_power { Some(check_v_class(&cfg.weight, &p, &dims, space)?) } else { None };
    let osc = check_v_osc_class(&cfg.weight, &p, &dims, space)?;
    let ok = osc.member && v.as_ref().is_none_or(|r| r.member);
    emit_json(cli, "weights", &json!({ "n": space.len(), "dims": dims, "v": v, "v_osc": osc }))?;
    Ok(ok)
}

fn cmd_dims(cli: &Cli) -> Outcome {
    let cfg = load_config(cli)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for n in cfg.effective_resolutions() {
        let built = cfg.space.build(n)?;
        let space = built.space();
        let dims = dim_bounds(space, &omega(&cfg, &built)?)?;
        ok &= dims.dim_lower <= dims.dim_upper;
        rows.push(json!({ "n": space.len(), "dims": dims, "doubling": doubling_constant(space) }));
    }
    emit_json(cli, "dims", &rows)?;
    Ok(ok)
}

fn cmd_apcheck(cli: &Cli, s: Option<f64>) -> Outcome {
    let cfg = load_config(cli)?;
    let mut reports = Vec::new();
    for n in cfg.effective_resolutions() {
        let built = cfg.space.build(n)?;
        let space = built.space();
        let rho = eval_weight(&cfg.weight, space)?;
        reports.push(match s {
            Some(s) => check_muckenhoupt(&rho.map(|r| r.powf(s)), s, space)?,
            None => theorem_erz_condition(&rho, &cfg.exponent.build(space)?, space)?,
        });
    }
    let merged = muckenhoupt_trend(&reports)?;
    emit_json(cli, "apcheck", &merged)?;
    Ok(merged.holds_estimate)
}

fn report_name(cfg: &ExperimentConfig, format: Format) -> String {
    format!("{}.{}", cfg.name, format.extension())
}

fn emit_report(cli: &Cli, cfg: &ExperimentConfig, report: &Report) -> Result<(), Error> {
    let format = Format::from(cli.format);
    let text = report_to_string(report, format)?;
    match (&cli.out, &cfg.output) {
        (None, Some(path)) => std::fs::write(path, text).map_err(|e| Error::Io { path: path.clone(), source: e }),
        _ => write_text(cli, &report_name(cfg, format), &text),
    }
}

fn cmd_operator(cli: &Cli) -> Outcome {
    let cfg = load_config(cli)?;
    let exp = run_boundedness(&cfg)?;
    let ok = exp.verdict != Verdict::Growing;
    emit_report(cli, &cfg, &Report { experiments: vec![exp], traces: vec![] })?;
    Ok(ok)
}

fn cmd_trace(cli: &Cli) -> Outcome {
    let cfg = load_config(cli)?;
    let t = run_proof_trace(&cfg)?;
    let ok = t.all_passed();
    emit_report(cli, &cfg, &Report { experiments: vec![], traces: vec![t] })?;
    Ok(ok)
}

fn cmd_report(cli: &Cli) -> Outcome {
    let cfg = load_config(cli)?;
    let exp = run_boundedness(&cfg)?;
    let mut ok = exp.verdict != Verdict::Growing;
    let mut traces = Vec::new();
    if cfg.trace.is_some() {
        let t = run_proof_trace(&cfg)?;
        ok &= t.all_passed();
        traces.push(t);
    }
    emit_report(cli, &cfg, &Report { experiments: vec![exp], traces })?;
    Ok(ok)
}

fn cmd_fourier(cli: &Cli, method: SumMethod, order: usize, input: &Path) -> Outcome {
    let f = read_input(input)?;
    let grid = build_circle_grid(f.len())?;
    let series = fourier_coeffs(&f, &grid)?;
    let k = order.min(series.order());
    let out = match method {
        SumMethod::Partial => partial_sum(&series, k, &grid)?,
        SumMethod::Zygmund => zygmund_mean(&series, k, &grid)?,
        SumMethod::Cesaro => cesaro_mean(&series, k, &grid)?,
        SumMethod::Majorant => majorant(&series, &grid, k)?,
        SumMethod::Square => littlewood_paley_square(&series, &grid)?,
    };
    let mut buf = Vec::new();
    out.write_csv_to(&mut buf)?;
    write_text(cli, "fourier_sum.csv", &String::from_utf8_lossy(&buf))?;
    Ok(true)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Norm { input } => cmd_norm(cli, input.as_deref()),
        Command::Maximal { input } => cmd_maximal(cli, input.as_deref()),
        Command::Weights { action: WeightsAction::Check } => cmd_weights(cli),
        Command::Dims => cmd_dims(cli),
        Command::Apcheck { s } => cmd_apcheck(cli, *s),
        Command::Operator { action: OperatorAction::Run } => cmd_operator(cli),
        Command::Extrapolate { action: ExtrapolateAction::Trace } => cmd_trace(cli),
        Command::Fourier { action: FourierAction::Sum { method, order, input } } => {
            cmd_fourier(cli, *method, *order, input)
        }
        Command::Report => cmd_report(cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("varexp: property violated");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("varexp: {e}");
            ExitCode::from(2)
        }
    }
}

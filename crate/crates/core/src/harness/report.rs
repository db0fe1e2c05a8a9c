use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::run::{ExperimentReport, TraceSummary};
use crate::error::{io_err, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub crate_version: String,
    pub os: String,
    pub arch: String,
}

impl Environment {
    pub fn current() -> Self {
        Environment {
            crate_version: env!("CARGO_PKG_VERSION").into(),
            os: std::env::consts::OS.into(),
            arch: std::env::consts::ARCH.into(),
        }
    }
}

/// Everything one run persists.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiments: Vec<ExperimentReport>,
    pub traces: Vec<TraceSummary>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    /// Long format `section,experiment,n,name,value`.
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Config(format!("unknown format {s:?} (json or csv)"))),
        }
    }
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn csv_string(report: &Report) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["section", "experiment", "n", "name", "value"])?;
    for e in &report.experiments {
        let name = &e.config.name;
        for r in &e.resolutions {
            let n = r.n.to_string();
            for f in &r.ratios {
                w.write_record(["ratio", name, &n, &f.function, &num(f.ratio)])?;
            }
            w.write_record(["max_ratio", name, &n, &r.argmax, &num(r.max_ratio)])?;
        }
        w.write_record(["summary", name, "", "max_ratio", &num(e.max_ratio)])?;
        w.write_record(["summary", name, "", "growth", &num(e.growth)])?;
        w.write_record(["summary", name, "", "trend_slope", &num(e.trend_slope)])?;
        w.write_record(["verdict", name, "", e.verdict.as_str(), ""])?;
    }
    for t in &report.traces {
        for r in &t.runs {
            let n = r.n.to_string();
            w.write_record(["trace_constant", &t.name, &n, "c0_rdf", &num(r.c0_rdf)])?;
            w.write_record(["trace_constant", &t.name, &n, "c0_claim", &num(r.c0_claim)])?;
            for tr in &r.traces {
                for s in &tr.trace.steps {
                    w.write_record(["trace_slack", &t.name, &n, &format!("{}/{}", tr.function, s.id), &num(s.slack)])?;
                }
                w.write_record(["trace_final", &t.name, &n, &tr.function, &num(tr.trace.final_ratio)])?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv buffer: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

/// The report as text; identical inputs give identical bytes.
pub fn report_to_string(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => csv_string(report),
    }
}

/// Writes the report to `path`.
pub fn report_emit(report: &Report, format: Format, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, report_to_string(report, format)?).map_err(io_err(path))
}

//! A boundedness sweep and a proof-trace run from a config, written as JSON
//! and CSV.

use varexp::harness::{report_to_string, run_boundedness, run_proof_trace, ExperimentConfig, Format, Report};

fn main() -> varexp::Result<()> {
    let cfg: ExperimentConfig = serde_json::from_str(
        r#"{"name":"sweep","space":{"kind":"interval","a":-1.0,"b":1.0},
            "exponent":{"kind":"affine","base":2.5,"slope":0.5},
            "weight":{"anchors":[{"at":0.0,"factor":{"kind":"power","beta":0.3}}]},
            "operator":{"id":"maximal"},"seed":1,"resolutions":[64,128,256],
            "trace":{"operator":{"id":"maximal"},"p0":1.5,"q0":1.5}}"#,
    )?;
    cfg.validate()?;
    let exp = run_boundedness(&cfg)?;
    for r in &exp.resolutions {
        println!("n = {:>4}: max ratio {:.4} ({})", r.n, r.max_ratio, r.argmax);
    }
    println!("verdict {} (growth {:.1}%)", exp.verdict.as_str(), 100.0 * exp.growth);
    let traces = run_proof_trace(&cfg)?;
    println!("traces all pass: {}", traces.all_passed());

    let report = Report { experiments: vec![exp], traces: vec![traces] };
    let csv = report_to_string(&report, Format::Csv)?;
    println!("csv rows: {}, json bytes: {}", csv.lines().count() - 1, report_to_string(&report, Format::Json)?.len());
    Ok(())
}

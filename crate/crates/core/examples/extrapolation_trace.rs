//! Step-by-step trace of the extrapolation argument for one pair (f, g).

use varexp::extrapolation::{trace_extrapolation, ExtrapolationConfig};
use varexp::operators::hl_maximal;
use varexp::space::{build_interval_grid, Site, VariableExponent};
use varexp::weights::{eval_weight, WeightSpec};

fn main() -> varexp::Result<()> {
    let g = build_interval_grid(0.0, 1.0, 256)?;
    let p = VariableExponent::from_coords(&g, |x| 2.0 + x)?;
    let rho = eval_weight(&WeightSpec::power(Site::At(0.5), 0.2), &g)?;
    let cfg = ExtrapolationConfig::new(p, rho, 1.5, 1.5, 2.0)?;

    let gf: Vec<f64> = g.nodes().iter().map(|x| (5.0 * x).sin().abs()).collect();
    let f = hl_maximal(&gf, &g)?;
    let h: Vec<f64> = g.nodes().iter().map(|x| 1.0 + x).collect();
    for claim in [4.0, 1.0] {
        let t = trace_extrapolation(&cfg, &f, &gf, &h, claim, &g)?;
        println!("claimed constant {claim}: passes {}", t.passes);
        for s in &t.steps {
            println!("  {:<18} lhs {:>10.5} rhs {:>10.5} slack {:>9.2e} {}", s.id, s.lhs, s.rhs, s.slack, s.passed);
        }
        println!("  ‖Mg‖/‖g‖ = {:.4}", t.final_ratio);
    }
    Ok(())
}

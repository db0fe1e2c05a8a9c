//! Muckenhoupt A_s constants of power weights across refinements.

use varexp::space::{build_interval_grid, Site};
use varexp::weights::{check_muckenhoupt, eval_weight, muckenhoupt_trend, WeightSpec};

fn main() -> varexp::Result<()> {
    for beta in [0.5, 0.9, 1.5] {
        let mut reports = Vec::new();
        for n in [256, 1024, 4096] {
            let g = build_interval_grid(-1.0, 1.0, n)?;
            let w = eval_weight(&WeightSpec::power(Site::At(0.0), beta), &g)?;
            reports.push(check_muckenhoupt(&w, 2.0, &g)?);
        }
        let t = muckenhoupt_trend(&reports)?;
        println!("|x|^{beta} in A_2: {} trend {:?}", t.holds_estimate, t.trend);
    }
    Ok(())
}

//! Admissible index windows for weight factors in both extrapolation modes,
//! and the p₀ limit of the class transform.

use varexp::dims::{dim_bounds, DimensionBounds};
use varexp::extrapolation::{weight_window, WindowMode};
use varexp::space::{build_interval_grid, Site, VariableExponent};
use varexp::weights::{remark_p0_limit, WeightSpec};

fn main() -> varexp::Result<()> {
    let g = build_interval_grid(-1.0, 1.0, 1025)?;
    let p = VariableExponent::from_coords(&g, |x| 2.5 + 0.5 * x)?;
    let sites = [Site::At(-0.5), Site::At(0.0), Site::At(0.5)];
    let dims = DimensionBounds::constant(1.0);
    for (p0, q0) in [(1.5, 1.5), (1.2, 2.0)] {
        for mode in [WindowMode::PartI, WindowMode::PartII] {
            let w = weight_window(&p, &dims, p0, q0, mode, &sites, &g)?;
            let spans: Vec<String> = w.anchors.iter().map(|a| format!("({:.3}, {:.3})", a.lower, a.upper)).collect();
            println!("p0 {p0} q0 {q0} {mode:?}: γ = {:.3} {}", w.gamma, spans.join(" "));
        }
    }
    let center = g.nearest_point(Site::At(0.0))?;
    let measured = dim_bounds(&g, &[center])?;
    let w = WeightSpec::power(Site::At(0.0), 0.3);
    println!("largest p0 keeping ρ admissible: {:.4}", remark_p0_limit(&w, &p, &measured, &g)?);
    Ok(())
}

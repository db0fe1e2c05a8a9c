//! Variable exponents: weak Lipschitz constants under refinement, duals,
//! Sobolev and extrapolation targets.

use varexp::extrapolation::target_exponent;
use varexp::space::{build_interval_grid, check_weak_lipschitz, weak_lipschitz_trend, VariableExponent};

fn main() -> varexp::Result<()> {
    let mut smooth = Vec::new();
    let mut step = Vec::new();
    for n in [128, 512, 2048] {
        let g = build_interval_grid(0.0, 1.0, n)?;
        let p = VariableExponent::from_coords(&g, |x| 2.0 + x * x)?;
        smooth.push((n, check_weak_lipschitz(&p, &g)?.best_a));
        let q = VariableExponent::from_coords(&g, |x| if x < 0.5 { 2.0 } else { 3.0 })?;
        step.push((n, check_weak_lipschitz(&q, &g)?.best_a));
    }
    println!("smooth: {:?}", weak_lipschitz_trend(&smooth));
    println!("step:   {:?}", weak_lipschitz_trend(&step));

    let g = build_interval_grid(0.0, 1.0, 8)?;
    let p = VariableExponent::constant(&g, 2.0)?;
    println!("target(2; 1.5, 3) = {}", target_exponent(&p, 1.5, 3.0)?.get(0));
    let p = VariableExponent::constant(&g, 4.0 / 3.0)?;
    println!("sobolev(4/3; 1/2) = {}", p.sobolev(0.5, 1.0)?.get(0));
    Ok(())
}

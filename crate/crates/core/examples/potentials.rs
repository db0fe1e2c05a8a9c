//! Riesz potential on an interval and the metric potential on the circle.

use varexp::operators::{metric_potential, riesz_potential, riesz_potential_at};
use varexp::space::{build_circle_grid, build_interval_grid};

fn main() -> varexp::Result<()> {
    let g = build_interval_grid(0.0, 1.0, 256)?;
    let one = vec![1.0; g.n];
    let at2 = riesz_potential_at(&one, 0.5, &g, 2.0)?;
    println!("I^1/2 χ(2) = {at2:.10}  (2(√2 − 1) = {:.10})", 2.0 * (2f64.sqrt() - 1.0));
    let inside = riesz_potential(&one, 0.5, &g)?;
    println!("I^1/2 χ at x = {:.4}: {:.6}", g.node(128), inside[128]);

    let c = build_circle_grid(4096)?;
    let v = metric_potential(&vec![1.0; c.n], 0.5, &c)?;
    println!("metric potential of 1 on the circle: {:.5} (2√(2π) = {:.5})", v[0], 2.0 * (2.0 * std::f64::consts::PI).sqrt());
    Ok(())
}

//! A pseudo-differential operator with an x-dependent symbol.

use num_complex::Complex64;
use varexp::operators::pseudodiff_apply;
use varexp::space::build_circle_grid;

fn main() -> varexp::Result<()> {
    let g = build_circle_grid(256)?;
    let f: Vec<Complex64> = g.nodes().iter().map(|t| Complex64::new((3.0 * t).cos(), 0.0)).collect();
    // order −1 symbol (1 + ξ²)^{−1/2} modulated in x
    let sigma = |x: f64, xi: f64| Complex64::new((1.0 + 0.5 * x.cos()) / (1.0 + xi * xi).sqrt(), 0.0);
    let r = pseudodiff_apply(sigma, &f, &g)?;
    for i in [0, 64, 128] {
        println!("x = {:.3}  σ(x,D)f = {:.5}", g.node(i), r.output[i].re);
    }
    println!("diagnostics {:?}", r.diagnostics);
    Ok(())
}

//! Hölder inequality with constant 2 and a lower bound for a dual norm.

use varexp::norms::{dual_norm_estimate, luxemburg_norm, verify_holder};
use varexp::space::{build_interval_grid, dual_exponent, VariableExponent};

fn main() -> varexp::Result<()> {
    let g = build_interval_grid(0.0, 1.0, 400)?;
    let p = VariableExponent::from_coords(&g, |x| 1.5 + 2.0 * x)?;
    let rho = vec![1.0; g.n];
    let f: Vec<f64> = g.nodes().iter().map(|x| 1.0 / (0.05 + x)).collect();
    let h: Vec<f64> = g.nodes().iter().map(|x| (6.0 * x).cos()).collect();

    let c = verify_holder(&f, &h, &p, &rho, &g)?;
    println!("∫|fh| = {:.6}  2‖f‖‖h‖ = {:.6}  ratio {:.4}", c.lhs, c.rhs, c.ratio);

    // ‖F‖_{q} is comparable to sup ∫Fh over the unit ball of the dual space
    let q = p.clone();
    let big_f: Vec<f64> = f.iter().map(|v| v.abs()).collect();
    let est = dual_norm_estimate(&big_f, &q, &rho, &g, 32, 7)?;
    let norm = luxemburg_norm(&big_f, &q, &rho, &g)?.value;
    println!("dual bound {:.6}  norm {:.6}  best candidate #{}", est.lower_bound, norm, est.best_index);
    println!("p' at the ends: {:.3} {:.3}", dual_exponent(&p)?.get(0), dual_exponent(&p)?.get(g.n - 1));
    Ok(())
}

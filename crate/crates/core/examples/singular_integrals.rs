//! Truncated Calderón–Zygmund operators, kernel conditions, commutators and
//! the Cauchy singular integral on a circle and an ellipse.

use num_complex::Complex64;
use varexp::operators::{cauchy_singular, commutator, cz_apply_real, kernel_condition_check, KernelSpec};
use varexp::space::{build_carleson_curve, build_circle_grid, CurveKind};

fn main() -> varexp::Result<()> {
    let c = build_circle_grid(512)?;
    let f: Vec<f64> = c.nodes().iter().map(|t| t.cos()).collect();
    let k = KernelSpec::hilbert(1e-3);
    let out = cz_apply_real(&f, &k, &c)?;
    println!("H_ε cos at node 0: {:.4}", out.output[0]);
    println!("kernel conditions: {:?}", kernel_condition_check(&k, &c, 200)?);
    let b: Vec<f64> = c.nodes().iter().map(|t| t.sin()).collect();
    let (_, norm) = commutator(&b, &k, &f, &c)?;
    println!("‖[b, H]f‖ = {norm:.4}");

    for kind in [CurveKind::Circle, CurveKind::Ellipse { a: 2.0, b: 1.0 }] {
        let curve = build_carleson_curve(&kind, 1024)?;
        let f: Vec<Complex64> = (0..curve.len()).map(|i| Complex64::new(1.0, 0.0) * curve.planar_point(i).unwrap()).collect();
        let s = cauchy_singular(&f, &curve)?;
        // S maps boundary values of an analytic function to themselves
        let err = (0..curve.len()).map(|i| (s[i] - f[i]).norm()).fold(0.0, f64::max);
        println!("{kind:?}: max |Sτ − τ| = {err:.2e}");
    }
    Ok(())
}

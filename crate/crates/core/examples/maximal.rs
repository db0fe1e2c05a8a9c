//! Maximal operators: Hardy–Littlewood, iterated, fractional, sharp and
//! vector-valued.

use varexp::operators::{fractional_maximal, hl_maximal, iterated_maximal, sharp_maximal, vector_maximal};
use varexp::space::build_interval_grid;

fn main() -> varexp::Result<()> {
    let g = build_interval_grid(0.0, 1.0, 256)?;
    let ind: Vec<f64> = g.nodes().iter().map(|&x| if (0.4..0.6).contains(&x) { 1.0 } else { 0.0 }).collect();
    let ramp: Vec<f64> = g.nodes().to_vec();

    let m = hl_maximal(&ind, &g)?;
    for i in [0, 64, 128, 255] {
        println!("x = {:.3}  Mχ = {:.4}", g.node(i), m[i]);
    }
    println!("M³χ at 0: {:.4}", iterated_maximal(&ind, 3, &g)?[0]);
    println!("M_0.3 χ at center: {:.4}", fractional_maximal(&ind, 0.3, &g)?[128]);
    let s = sharp_maximal(&ind, &g)?;
    println!("sup M#χ = {:.4}", s.sup_abs());
    let v = vector_maximal(&[&ind, &ramp], 2.0, &g)?;
    println!("(Σ|Mf_j|²)^½ at 0: {:.4}", v[0]);
    Ok(())
}

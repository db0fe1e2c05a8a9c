//! Luxemburg norm and modular of a function on a weighted interval.

use varexp::norms::{luxemburg_norm, modular};
use varexp::space::{build_interval_grid, Site, VariableExponent};
use varexp::weights::{eval_weight, WeightSpec};

fn main() -> varexp::Result<()> {
    let g = build_interval_grid(-1.0, 1.0, 512)?;
    let p = VariableExponent::from_coords(&g, |x| 2.0 + 0.5 * x)?;
    let rho = eval_weight(&WeightSpec::power(Site::At(0.0), 0.3), &g)?;
    let f: Vec<f64> = g.nodes().iter().map(|x| (3.0 * x).sin() + 0.2).collect();

    let n = luxemburg_norm(&f, &p, &rho, &g)?;
    println!("norm        {:.12}", n.value);
    println!("bisections  {}", n.iterations);
    println!("modular(n)  {:.12}", modular(&f, &p, &rho, &g, n.value)?);

    // with p constant the norm is the weighted l^p sum
    let p3 = VariableExponent::constant(&g, 3.0)?;
    let direct: f64 = (0..g.n).map(|i| (rho[i] * f[i]).abs().powi(3) * g.mass(i)).sum::<f64>().cbrt();
    println!("p = 3       {:.12} vs {:.12}", luxemburg_norm(&f, &p3, &rho, &g)?.value, direct);
    Ok(())
}

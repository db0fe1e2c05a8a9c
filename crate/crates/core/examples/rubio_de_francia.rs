//! The Rubio de Francia iteration and its three properties.

use varexp::extrapolation::{estimate_c0, rubio_de_francia, verify_rdf_properties, ExtrapolationConfig};
use varexp::space::{build_interval_grid, dual_exponent, Site, VariableExponent};
use varexp::weights::{eval_weight, WeightSpec};

fn main() -> varexp::Result<()> {
    let g = build_interval_grid(0.0, 1.0, 256)?;
    let p = VariableExponent::from_coords(&g, |x| 2.0 + x)?;
    let rho = eval_weight(&WeightSpec::power(Site::At(0.5), 0.2), &g)?;
    let cfg = ExtrapolationConfig::new(p, rho.clone(), 1.5, 1.5, 1.0)?;
    let q = cfg.q()?;

    let phi: Vec<f64> = g.nodes().iter().map(|&x| if (0.2..0.3).contains(&x) { 1.0 } else { 0.0 }).collect();
    let c0 = estimate_c0(&q, &rho, 1.5, &g, &[phi.clone()], 1.5)?;
    let r = rubio_de_francia(&phi, c0, None, &g)?;
    println!("C0 = {c0:.4}, {} terms, tail bound {:.2e}", r.terms, r.tail_bound);

    let qd = dual_exponent(&q.divided(1.5)?)?;
    let rep = verify_rdf_properties(&phi, &r, c0, &qd, &cfg.rho_neg_q0(), &g)?;
    println!("φ ≤ Sφ: {}  doubling: {}  A1: {} (sup M(Sφ)/Sφ = {:.3})", rep.dominates.holds, rep.norm_doubling.holds, rep.a1.holds, rep.a1_ratio);

    let one = rubio_de_francia(&vec![1.0; g.n], 1.0, None, &g)?;
    println!("S1 with C0 = 1: {:.12}", one.s_phi[0]);
    Ok(())
}

//! Continuous multipliers and their sampled conditions, and series
//! multipliers including the λ_{k,n} sequences.

use num_complex::Complex64;
use varexp::fourier::{
    apply_series_multiplier, continuous_multiplier, fourier_coeffs, fractional_series_multiplier, lambda_kn_cesaro,
    lambda_kn_zygmund, marcinkiewicz_constant, multiplier_condition_report, SymbolSpec,
};
use varexp::space::build_circle_grid;

fn main() -> varexp::Result<()> {
    for m in [SymbolSpec::Conjugate, SymbolSpec::Saturation, SymbolSpec::FractionalPower { alpha: 0.5 }] {
        let r = multiplier_condition_report(&m)?;
        println!("{m:?}: Mikhlin {:.3}  Hörmander {:.3}  variation {:.3}", r.mikhlin, r.hormander, r.variation_sup);
    }

    let g = build_circle_grid(256)?;
    let f: Vec<Complex64> = g.nodes().iter().map(|t| Complex64::new((2.0 * t).cos(), 0.0)).collect();
    let h = continuous_multiplier(&SymbolSpec::Conjugate, &f, &g)?;
    println!("conjugate of cos 2θ at θ = {:.3}: {:.4} (sin 2θ = {:.4})", g.node(10), h[10].re, (2.0 * g.node(10)).sin());

    let real: Vec<f64> = f.iter().map(|z| z.re).collect();
    let s = fourier_coeffs(&real, &g)?;
    for (name, lam) in [("zygmund", lambda_kn_zygmund(32)?), ("cesaro", lambda_kn_cesaro(32)?)] {
        let out = apply_series_multiplier(&s, &lam, &g)?;
        println!("λ_kn {name}: Marcinkiewicz {:.4}, output at 0 {:.4}", marcinkiewicz_constant(&lam), out[0]);
    }
    let atoms = vec![vec![(0.0, 1.0), (0.5, -0.5)]];
    let frac = fractional_series_multiplier(0.3, &atoms, 16)?;
    println!("fractional multiplier, first terms {:?}", &frac.values[..4]);
    Ok(())
}

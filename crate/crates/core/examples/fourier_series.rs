//! Trigonometric coefficients, partial sums, Zygmund and Cesàro means, the
//! Steklov mean, the continuity modulus and the Littlewood–Paley square function.

use varexp::fourier::{
    cesaro_mean, fourier_coeffs, littlewood_paley_square, majorant, modulus, partial_sum, steklov_mean, zygmund_mean,
};
use varexp::space::{build_circle_grid, VariableExponent};

fn main() -> varexp::Result<()> {
    let g = build_circle_grid(1024)?;
    let f: Vec<f64> = g.nodes().iter().map(|t| if t.sin() > 0.0 { 1.0 } else { -1.0 }).collect();
    let s = fourier_coeffs(&f, &g)?;
    println!("b_1 = {:.6} (4/π = {:.6})", s.b[1], 4.0 / std::f64::consts::PI);

    let i = 256; // θ = π/2
    for n in [8, 64] {
        println!(
            "n = {n}: S_n {:.4}  Z_n {:.4}  σ_n {:.4}",
            partial_sum(&s, n, &g)?[i],
            zygmund_mean(&s, n, &g)?[i],
            cesaro_mean(&s, n, &g)?[i]
        );
    }
    println!("sup_n≤64 |S_n| near the jump: {:.4}", majorant(&s, &g, 64)?[2]);
    println!("τ_0.1 f at π/2: {:.4}", steklov_mean(&f, 0.1, &g)?[i]);
    let p = VariableExponent::from_coords(&g, |t| 2.0 + 0.5 * t.cos())?;
    println!("Ω(f, 0.1) = {:.4}", modulus(&f, &p, &vec![1.0; g.n], 0.1, &g)?);
    println!("square function at π/2: {:.4}", littlewood_paley_square(&s, &g)?[i]);
    Ok(())
}

//! Local dimensions, the scaling function μ₀ and doubling constants.

use varexp::dims::{doubling_constant, local_dims, mu0, ScaleGrid};
use varexp::space::{build_circle_grid, build_interval_grid};

fn main() -> varexp::Result<()> {
    let circle = build_circle_grid(2048)?;
    let d = local_dims(&circle, 0)?;
    println!("circle         lower {:.4} upper {:.4}", d.lower, d.upper);

    let w = build_interval_grid(-1.0, 1.0, 2049)?.with_density(|x| x.abs())?;
    let d = local_dims(&w, 1024)?;
    println!("|x|dx at 0     lower {:.4} upper {:.4}", d.lower, d.upper);
    let d = local_dims(&w, 1600)?;
    println!("|x|dx at 0.56  lower {:.4} upper {:.4}", d.lower, d.upper);

    let grid = ScaleGrid::near_zero(&w);
    for r in [0.25, 0.5, 2.0, 4.0] {
        println!("mu0(0, {r}) = {:.4}", mu0(&w, 1024, r, &grid)?);
    }
    println!("doubling: circle {:.3}, |x|dx {:.3}", doubling_constant(&circle).c, doubling_constant(&w).c);
    Ok(())
}

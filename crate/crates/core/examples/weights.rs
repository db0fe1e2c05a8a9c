//! Weight factors: Matuszewska–Orlicz indices, Zygmund–Bary–Stechkin
//! membership and the V / V^osc admissibility classes.

use varexp::dims::dim_bounds;
use varexp::space::{build_interval_grid, Site, VariableExponent};
use varexp::weights::{check_v_class, check_v_osc_class, check_zbs, mo_indices, Factor, IndexGrid, WeightSpec};

fn main() -> varexp::Result<()> {
    let grid = IndexGrid::default();
    for f in [Factor::Power { beta: 0.3 }, Factor::PowerLog { beta: 0.3, gamma: 2.0 }] {
        let idx = mo_indices(&f, &grid)?;
        let zbs = check_zbs(&f, 1.0, 1.0)?;
        println!("{f:?}: m = {:.4}, M = {:.4}, ZBS member {}", idx.lower, idx.upper, zbs.member);
    }

    let g = build_interval_grid(-1.0, 1.0, 1025)?;
    let p = VariableExponent::constant(&g, 2.0)?;
    let center = g.nearest_point(Site::At(0.0))?;
    let dims = dim_bounds(&g, &[center])?;
    for beta in [0.2, 0.45, 0.7] {
        let w = WeightSpec::power(Site::At(0.0), beta).with_anchor(Site::At(0.9), Factor::Power { beta: -0.1 });
        let v = check_v_class(&w, &p, &dims, &g)?;
        let osc = check_v_osc_class(&w, &p, &dims, &g)?;
        println!("beta {beta}: V {} (margin {:.3}), V^osc {}", v.member, v.margin, osc.member);
    }
    Ok(())
}

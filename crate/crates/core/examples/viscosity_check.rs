//! Residual of the limit equation for the distance cone on the unit disk.
//!
//! The cone `R - |x|` with `lambda = 1/R` solves the positive-regime equation
//! away from its apex; the residual shrinks as the grid is refined.

use plap_lab::viscosity::{evaluate, CheckOptions};
use plap_lab::{build_weight, cone_field, disk, edt, rasterize, Grid, Primitive, WeightSpec};

fn main() -> plap_lab::Result<()> {
    let opts = CheckOptions::default();
    let mut prev: Option<f64> = None;
    println!(
        "{:>6} {:>12} {:>10} {:>8} {:>9} {:>6}",
        "1/h", "pos max", "4h", "order", "excluded", "pass"
    );
    for n in [32u32, 64, 128, 256] {
        let h = 1.0 / n as f64;
        let grid = Grid::covering([-1.0, -1.0], [1.0, 1.0], h)?;
        let mask = rasterize(&[Primitive::union(disk([0.0, 0.0], 1.0))], &grid)?;
        let w = build_weight(&WeightSpec::Constant(1.0), &mask)?;
        let dist = edt(&mask);
        let center = grid
            .nearest_node([0.0, 0.0])
            .expect("origin lies on the grid");
        let radius = dist.at_node(center);
        let u = cone_field(center, radius, &dist)?;
        let eval = evaluate(&u, 1.0 / radius, &w, &opts)?;
        let r = &eval.report;
        let order = prev.map(|p| (p / r.pos.max_residual).log2());
        println!(
            "{:>6} {:>12.3e} {:>10.3e} {:>8} {:>9} {:>6}",
            n,
            r.pos.max_residual,
            r.tolerance,
            order.map_or("-".into(), |o| format!("{o:.2}")),
            r.excluded,
            r.pos.pass
        );
        prev = Some(r.pos.max_residual);
    }
    Ok(())
}
